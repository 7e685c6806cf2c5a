use crate::error::{Error, Result};

use super::Problem;

/// Central difference with step `cbrt(eps) * max(1, |x|)`.
pub fn numeric_derivative(f: &dyn Fn(f64) -> f64, x: f64) -> Result<f64> {
    let h = f64::EPSILON.cbrt() * x.abs().max(1.0);
    let (lo, hi) = (f(x - h), f(x + h));
    if !lo.is_finite() || !hi.is_finite() {
        return Err(Error::NonFinite { x });
    }
    Ok((hi - lo) / (2.0 * h))
}

/// `1.01 * max |df(x_{j+1}) - df(x_j)| / (x_{j+1} - x_j)` on a uniform grid
/// of `grid_points` intervals over the problem's domain.
pub fn exact_lipschitz_oracle(problem: &Problem, grid_points: usize) -> f64 {
    let n = grid_points.max(1);
    let step = problem.width() / n as f64;
    let mut prev = problem.derivative(problem.a);
    let mut prev_x = problem.a;
    let mut best = 0.0f64;
    for j in 1..=n {
        let x = if j == n { problem.b } else { problem.a + j as f64 * step };
        let d = problem.derivative(x);
        best = best.max((d - prev).abs() / (x - prev_x));
        prev = d;
        prev_x = x;
    }
    1.01 * best
}

/// Smallest value of `f` on a uniform grid of `points` abscissas including
/// both ends. Returns `(x, f(x))`; ties go left.
pub fn grid_minimum(problem: &Problem, points: usize) -> (f64, f64) {
    let n = points.max(2) - 1;
    let mut best = (problem.a, problem.value(problem.a));
    for j in 1..=n {
        let x = if j == n {
            problem.b
        } else {
            problem.a + problem.width() * j as f64 / n as f64
        };
        let v = problem.value(x);
        if v < best.1 {
            best = (x, v);
        }
    }
    best
}
