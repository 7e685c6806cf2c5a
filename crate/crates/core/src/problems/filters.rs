use std::sync::Arc;

use crate::error::{Error, Result};

use super::{exact_lipschitz_oracle, numeric_derivative, Callable, Problem, ProblemKind, ReferenceTrials};

/// Search interval for the Chebyshev cutoff, in rad/s.
pub const CHEBYSHEV_DOMAIN: (f64, f64) = (1e-3, 2.0);
/// Search interval for the passband cutoff, in rad/s.
pub const PASSBAND_DOMAIN: (f64, f64) = (1.0, 1e4);

const FMAX_GRID_POINTS: usize = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChebyshevParams {
    /// Ohm.
    pub r_res: f64,
    /// Farad.
    pub c_cap: f64,
    /// Henry.
    pub l_ind: f64,
}

impl Default for ChebyshevParams {
    fn default() -> Self {
        Self {
            r_res: 1.0,
            c_cap: 4.0,
            l_ind: 2.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PassbandParams {
    pub r1: f64,
    pub r2: f64,
    pub l1: f64,
    pub l2: f64,
    pub c1: f64,
    pub c2: f64,
}

impl Default for PassbandParams {
    fn default() -> Self {
        Self {
            r1: 3108.0,
            r2: 477.0,
            l1: 40e-3,
            l2: 3.5,
            c1: 1e-6,
            c2: 0.1e-6,
        }
    }
}

/// Magnitude response of the third-order Chebyshev low-pass filter.
pub fn chebyshev_transfer(omega: f64, p: &ChebyshevParams) -> f64 {
    let ChebyshevParams { r_res: r, c_cap: c, l_ind: l } = *p;
    let w2 = omega * omega;
    let first = 1.0 / (1.0 + r * r * c * c * w2).sqrt();
    let second = 1.0 / ((2.0 - w2 * l * c).powi(2) + w2 * l * l / (r * r)).sqrt();
    first * second
}

/// Transimpedance magnitude of the passband filter. Defined for `omega > 0`.
pub fn passband_transfer(omega: f64, p: &PassbandParams) -> Result<f64> {
    if !(omega > 0.0) {
        return Err(Error::DomainError {
            what: "passband transfer needs omega > 0",
            value: omega,
        });
    }
    let PassbandParams { r1, r2, l1, l2, c1, c2 } = *p;
    let w = omega;
    let z1 = -w.powi(3) * r1 * l1 * l2 + w * r1 * l2 + w * r1 * l1 * c1 / c2 - r1 / (w * c2)
        + 2.0 * w * l1 * r1
        + w * l1 * r2;
    let z2 = w * w * l1 * l2 + w * w * r1 * r2 * l1 * c1 - r1 * r2 - l1 / c2;
    let z3 = (w * l1).powi(2) + (w * w * r1 * l1 * c1 - r1).powi(2);
    Ok(w * l1 * r1 / ((z1 * z1 + z2 * z2).powi(2) * z3).sqrt())
}

/// Maximum of `transfer` over `[lo, hi]`: a dense scan of `grid_points`
/// abscissas (ties go left), then golden-section refinement inside the
/// bracketing triple. Returns `(F_max, argmax)`.
pub fn find_fmax(transfer: &dyn Fn(f64) -> f64, (lo, hi): (f64, f64), grid_points: usize) -> Result<(f64, f64)> {
    if !(lo < hi) {
        return Err(Error::InvalidInterval {
            x_left: lo,
            x_right: hi,
        });
    }
    if grid_points < 1000 {
        return Err(Error::InvalidConfig(format!(
            "find_fmax needs at least 1000 grid points, got {grid_points}"
        )));
    }
    let n = grid_points - 1;
    let at = |j: usize| if j == n { hi } else { lo + (hi - lo) * j as f64 / n as f64 };
    let mut best_j = 0;
    let mut best = transfer(lo);
    for j in 1..=n {
        let v = transfer(at(j));
        if v > best {
            best = v;
            best_j = j;
        }
    }
    let mut best_x = at(best_j);
    let (mut a, mut b) = (at(best_j.saturating_sub(1)), at((best_j + 1).min(n)));
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let (mut fc, mut fd) = (transfer(c), transfer(d));
    while (b - a) > 1e-12 * a.abs().max(b.abs()).max(f64::MIN_POSITIVE) {
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = transfer(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = transfer(d);
        }
    }
    let x = 0.5 * (a + b);
    let v = transfer(x);
    if v > best {
        best = v;
        best_x = x;
    }
    Ok((best, best_x))
}

/// Wraps `f(w) = ±(F(w)^2 - F_max^2 / 2)` as a problem whose derivative is
/// taken numerically. `negate` selects the minus sign.
pub fn cutoff_objective(
    id: &str,
    name: &str,
    domain: (f64, f64),
    transfer: Callable,
    f_max: f64,
    negate: bool,
) -> Result<Problem> {
    if !(f_max > 0.0) || !f_max.is_finite() {
        return Err(Error::InvalidConfig(format!("F_max = {f_max} must be positive")));
    }
    let sign = if negate { -1.0 } else { 1.0 };
    let half = 0.5 * f_max * f_max;
    let objective: Callable = Arc::new(move |w| sign * (transfer(w).powi(2) - half));
    let for_derivative = Arc::clone(&objective);
    let mut p = Problem::new(id, name, domain, move |w| objective(w), move |w| {
        numeric_derivative(for_derivative.as_ref(), w).unwrap_or(f64::NAN)
    })?;
    p.kind = ProblemKind::Filter;
    Ok(p)
}

fn finish(mut p: Problem, frl: f64, trials: [usize; 3], oracle_points: usize) -> Problem {
    p.reference_frl = Some(frl);
    p.reference_trials = Some(ReferenceTrials {
        grid: trials[0],
        a1: trials[1],
        a2: trials[2],
    });
    let k = exact_lipschitz_oracle(&p, oracle_points);
    p.with_lipschitz(k)
}

pub(super) fn chebyshev_problem(oracle_points: usize) -> Problem {
    let params = ChebyshevParams::default();
    let transfer: Callable = Arc::new(move |w| chebyshev_transfer(w, &params));
    let (f_max, _) = find_fmax(transfer.as_ref(), CHEBYSHEV_DOMAIN, FMAX_GRID_POINTS).expect("static range");
    let p = cutoff_objective(
        "chebyshev",
        "Chebyshev filter cutoff: F(w)^2 - 0.5 F_max^2",
        CHEBYSHEV_DOMAIN,
        transfer,
        f_max,
        false,
    )
    .expect("positive peak");
    finish(p, 0.8459, [2745, 11, 10], oracle_points)
}

pub(super) fn passband_problem(oracle_points: usize) -> Problem {
    let params = PassbandParams::default();
    let transfer: Callable = Arc::new(move |w| passband_transfer(w, &params).unwrap_or(f64::NAN));
    let (f_max, _) = find_fmax(transfer.as_ref(), PASSBAND_DOMAIN, FMAX_GRID_POINTS).expect("static range");
    let p = cutoff_objective(
        "passband",
        "passband filter cutoff: -(F(w)^2 - 0.5 F_max^2)",
        PASSBAND_DOMAIN,
        transfer,
        f_max,
        true,
    )
    .expect("positive peak");
    finish(p, 4824.43, [4474, 44, 27], oracle_points)
}

#[cfg(test)]
mod tests {
    use approx::assert_relative_eq;

    use super::*;

    #[test]
    fn chebyshev_at_dc() {
        assert_relative_eq!(chebyshev_transfer(0.0, &ChebyshevParams::default()), 0.5);
    }

    #[test]
    fn chebyshev_tail_decays() {
        let p = ChebyshevParams::default();
        let mut prev = chebyshev_transfer(5.0, &p);
        for i in 1..100 {
            let v = chebyshev_transfer(5.0 + i as f64, &p);
            assert!(v < prev);
            prev = v;
        }
        assert!(prev < 1e-4);
    }

    #[test]
    fn passband_limits() {
        let p = PassbandParams::default();
        assert!(passband_transfer(1e-4, &p).unwrap() < 1e-30);
        assert!(passband_transfer(1e8, &p).unwrap() < 1e-30);
        assert!(matches!(passband_transfer(0.0, &p), Err(Error::DomainError { .. })));
    }

    #[test]
    fn transfers_are_positive_on_their_domains() {
        let cp = ChebyshevParams::default();
        let pp = PassbandParams::default();
        for i in 0..=1000 {
            let t = i as f64 / 1000.0;
            let wc = CHEBYSHEV_DOMAIN.0 + t * (CHEBYSHEV_DOMAIN.1 - CHEBYSHEV_DOMAIN.0);
            let wp = PASSBAND_DOMAIN.0 + t * (PASSBAND_DOMAIN.1 - PASSBAND_DOMAIN.0);
            let c = chebyshev_transfer(wc, &cp);
            let p = passband_transfer(wp, &pp).unwrap();
            assert!(c.is_finite() && c > 0.0);
            assert!(p.is_finite() && p > 0.0);
        }
    }

    #[test]
    fn fmax_examples() {
        let (v, x) = find_fmax(&|w| 1.0 / (1.0 + (w - 3.0).powi(2)), (0.0, 10.0), 1000).unwrap();
        assert_relative_eq!(v, 1.0);
        assert_relative_eq!(x, 3.0, max_relative = 1e-7);
        let (v, x) = find_fmax(&|_| 2.5, (1.0, 4.0), 1000).unwrap();
        assert_eq!((v, x), (2.5, 1.0));
        assert!(find_fmax(&|w| w, (0.0, 1.0), 10).is_err());
    }

    #[test]
    fn fmax_refines_off_grid_peak() {
        let peak = std::f64::consts::E;
        let (_, x) = find_fmax(&|w| -(w - peak).powi(2), (0.0, 10.0), 1000).unwrap();
        assert!((x - peak).abs() <= 1e-8 * peak);
    }

    #[test]
    fn cutoff_objective_signs() {
        let t: Callable = Arc::new(|_| 3.0);
        let p = cutoff_objective("c", "c", (0.0, 1.0), Arc::clone(&t), 3.0, false).unwrap();
        assert_relative_eq!(p.value(0.5), 4.5);
        let q = cutoff_objective("c", "c", (0.0, 1.0), t, 3.0, true).unwrap();
        assert_relative_eq!(q.value(0.5), -4.5);
        assert!(q.derivative(0.5).abs() < 1e-9);
        let z: Callable = Arc::new(|_| 1.0);
        assert!(cutoff_objective("c", "c", (0.0, 1.0), z, 0.0, false).is_err());
    }
}
