//! Adaptive local bounds on the Lipschitz constant of `f'`.
//!
//! Every interval of the effective trial set receives
//! `m_i = r * max(lambda_i, gamma_i, xi)`, where `lambda_i` is the largest
//! curvature estimate over the interval and its two neighbours and
//! `gamma_i` scales the global estimate by the interval's relative width.

use crate::error::{Error, Result};
use crate::trial::Trial;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EstimationParams {
    /// Reliability multiplier `r > 1`.
    pub reliability: f64,
    /// Floor `xi > 0`, in curvature units.
    pub floor: f64,
}

impl EstimationParams {
    pub fn new(reliability: f64, floor: f64) -> Result<Self> {
        if !(reliability > 1.0) || !reliability.is_finite() {
            return Err(Error::InvalidConfig(format!(
                "reliability r = {reliability} must exceed 1"
            )));
        }
        if !(floor > 0.0) || !floor.is_finite() {
            return Err(Error::InvalidConfig(format!(
                "floor xi = {floor} must be positive"
            )));
        }
        Ok(Self { reliability, floor })
    }
}

impl Default for EstimationParams {
    fn default() -> Self {
        Self {
            reliability: 1.2,
            floor: 1e-6,
        }
    }
}

/// Per-interval estimates for the intervals `[t_q, t_{q+1}]`, `q = 0..k-1`.
#[derive(Debug, Clone, PartialEq)]
pub struct CurvatureTable {
    pub v: Vec<f64>,
    /// Largest entry of `v`.
    pub m_global: f64,
    /// Widest interval.
    pub max_gap: f64,
    pub lambda: Vec<f64>,
    pub gamma: Vec<f64>,
    pub bounds: Vec<f64>,
}

/// Curvature estimate from the values and slopes at both ends of an interval.
///
/// With `g = 2 (z_l - z_r) + (dz_r + dz_l) h` and `h = x_r - x_l` this is
///
/// ```text
/// v = (|g| + sqrt(g^2 + (dz_r - dz_l)^2 h^2)) / h^2
/// ```
///
/// which is exact for quadratics, vanishes on linear data, and is the
/// smallest `m` for which both knots of the support function stay inside
/// the interval.
pub fn interval_curvature(left: &Trial, right: &Trial) -> Result<f64> {
    let h = right.x - left.x;
    let threshold = 1e3 * f64::EPSILON * 1f64.max(left.x.abs()).max(right.x.abs());
    if !(h > threshold) {
        return Err(Error::DegenerateInterval {
            x_left: left.x,
            x_right: right.x,
        });
    }
    let g = 2.0 * (left.z - right.z) + (right.dz + left.dz) * h;
    let slope_change = (right.dz - left.dz) * h;
    let d = g.hypot(slope_change);
    Ok((g.abs() + d) / (h * h))
}

/// Builds the per-interval bounds for a sorted effective trial set.
pub fn build_curvature_table(trials: &[Trial], params: &EstimationParams) -> Result<CurvatureTable> {
    if trials.len() < 2 {
        return Err(Error::InvalidConfig(
            "curvature estimation needs at least two trials".into(),
        ));
    }
    let v = trials
        .windows(2)
        .map(|w| interval_curvature(&w[0], &w[1]))
        .collect::<Result<Vec<_>>>()?;
    let gaps: Vec<f64> = trials.windows(2).map(|w| w[1].x - w[0].x).collect();
    let m_global = v.iter().copied().fold(0.0, f64::max);
    let max_gap = gaps.iter().copied().fold(0.0, f64::max);

    let n = v.len();
    let lambda: Vec<f64> = (0..n)
        .map(|q| {
            let lo = q.saturating_sub(1);
            let hi = (q + 1).min(n - 1);
            v[lo..=hi].iter().copied().fold(0.0, f64::max)
        })
        .collect();
    let gamma: Vec<f64> = gaps.iter().map(|&g| m_global * g / max_gap).collect();
    let bounds = lambda
        .iter()
        .zip(&gamma)
        .map(|(&l, &g)| params.reliability * l.max(g).max(params.floor))
        .collect();

    Ok(CurvatureTable {
        v,
        m_global,
        max_gap,
        lambda,
        gamma,
        bounds,
    })
}
