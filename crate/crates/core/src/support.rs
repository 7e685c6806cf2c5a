//! Smooth piecewise-quadratic support functions over one interval.
//!
//! Over `[x_left, x_right]` the support function glues three quadratics with
//! curvature `±m`:
//!
//! ```text
//! phi(x) = z_left  + dz_left (x - x_left)  - m/2 (x - x_left)^2     x in [x_left, y']
//!          m/2 x^2 + b x + c                                          x in (y', y]
//!          z_right - dz_right (x_right - x) - m/2 (x_right - x)^2    x in (y, x_right]
//! ```
//!
//! The knots `y' <= y` and the coefficients `b`, `c` are chosen so that `phi`
//! is continuously differentiable. When `m` bounds the Lipschitz constant of
//! `f'` on the interval, `phi <= f` there.

use crate::error::{Error, Result};

/// Endpoint data and smoothness bound for one interval.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntervalData {
    pub x_left: f64,
    pub x_right: f64,
    pub z_left: f64,
    pub z_right: f64,
    pub dz_left: f64,
    pub dz_right: f64,
    pub m: f64,
}

impl IntervalData {
    pub fn width(&self) -> f64 {
        self.x_right - self.x_left
    }

    /// Magnitude used for relative tolerances on values of `phi`.
    pub fn scale(&self) -> f64 {
        let w = self.width();
        [
            1.0,
            self.z_left.abs(),
            self.z_right.abs(),
            self.dz_left.abs() * w,
            self.dz_right.abs() * w,
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }

    fn denominator(&self) -> f64 {
        self.m * self.width() + self.dz_right - self.dz_left
    }
}

/// Which candidate realizes the minimum of `phi` over the interval.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MinimizerKind {
    LeftEnd,
    Interior,
    RightEnd,
}

/// Point proposed for subdivision when every characteristic is positive.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProbePoint {
    /// `phi'` keeps its sign on `[y', y]` and the left endpoint is minimal.
    LeftKnot,
    /// `phi'` changes sign on `[y', y]`.
    Stationary,
    /// `phi'` keeps its sign on `[y', y]` and the right endpoint is minimal.
    RightKnot,
}

/// Minimum of `phi` over its interval.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Characteristic {
    /// Minimizer.
    pub h: f64,
    /// `phi(h)`.
    pub value: f64,
    pub kind: MinimizerKind,
    pub probe: ProbePoint,
}

/// Which quadratic of the three is active at an abscissa.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Piece {
    Left,
    Middle,
    Right,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SupportFunction {
    data: IntervalData,
    y_prime: f64,
    y: f64,
    b: f64,
    c: f64,
}

impl SupportFunction {
    /// Builds the support function for `data`.
    ///
    /// Fails with [`Error::DegenerateSlope`] when
    /// `m (x_right - x_left) + dz_right - dz_left <= 0`.
    pub fn new(data: IntervalData) -> Result<Self> {
        let IntervalData {
            x_left: x0,
            x_right: x1,
            z_left: z0,
            z_right: z1,
            dz_left: d0,
            dz_right: d1,
            m,
        } = data;
        if !(x0 < x1) || !x0.is_finite() || !x1.is_finite() {
            return Err(Error::InvalidInterval {
                x_left: x0,
                x_right: x1,
            });
        }
        if !(m > 0.0) || !m.is_finite() {
            return Err(Error::InvalidBound { m });
        }
        let denominator = data.denominator();
        if !(denominator > 0.0) {
            return Err(Error::DegenerateSlope {
                x_left: x0,
                x_right: x1,
                denominator,
            });
        }

        let shared = (z0 - z1 + d1 * x1 - d0 * x0 + 0.5 * m * (x1 * x1 - x0 * x0)) / denominator;
        let half_gap = (x1 - x0) / 4.0 + (d1 - d0) / (4.0 * m);
        let y = half_gap + shared;
        let y_prime = -half_gap + shared;
        let b = d1 - 2.0 * m * y + m * x1;
        let c = z1 - d1 * x1 - 0.5 * m * x1 * x1 + m * y * y;
        Ok(Self {
            data,
            y_prime,
            y,
            b,
            c,
        })
    }

    pub fn data(&self) -> &IntervalData {
        &self.data
    }

    pub fn y_prime(&self) -> f64 {
        self.y_prime
    }

    pub fn y(&self) -> f64 {
        self.y
    }

    /// Linear coefficient of the middle piece.
    pub fn b(&self) -> f64 {
        self.b
    }

    /// Constant coefficient of the middle piece.
    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn m(&self) -> f64 {
        self.data.m
    }

    /// Piece selection with half-open ranges `[x_left, y']`, `(y', y]`, `(y, x_right]`.
    pub fn piece_at(&self, x: f64) -> Piece {
        if x <= self.y_prime {
            Piece::Left
        } else if x <= self.y {
            Piece::Middle
        } else {
            Piece::Right
        }
    }

    fn check_inside(&self, x: f64) -> Result<()> {
        if x >= self.data.x_left && x <= self.data.x_right {
            Ok(())
        } else {
            Err(Error::OutOfInterval {
                x,
                x_left: self.data.x_left,
                x_right: self.data.x_right,
            })
        }
    }

    pub fn value(&self, x: f64) -> Result<f64> {
        self.check_inside(x)?;
        Ok(self.piece_value(self.piece_at(x), x))
    }

    pub fn derivative(&self, x: f64) -> Result<f64> {
        self.check_inside(x)?;
        Ok(self.piece_derivative(self.piece_at(x), x))
    }

    /// Evaluates one quadratic without range checks; used to test gluing.
    pub fn piece_value(&self, piece: Piece, x: f64) -> f64 {
        let d = &self.data;
        match piece {
            Piece::Left => {
                let t = x - d.x_left;
                d.z_left + d.dz_left * t - 0.5 * d.m * t * t
            }
            Piece::Middle => {
                let (v0, p0) = self.middle_anchor();
                let t = x - self.y_prime;
                v0 + p0 * t + 0.5 * d.m * t * t
            }
            Piece::Right => {
                let t = d.x_right - x;
                d.z_right - d.dz_right * t - 0.5 * d.m * t * t
            }
        }
    }

    pub fn piece_derivative(&self, piece: Piece, x: f64) -> f64 {
        let d = &self.data;
        match piece {
            Piece::Left => d.dz_left - d.m * (x - d.x_left),
            Piece::Middle => self.middle_anchor().1 + d.m * (x - self.y_prime),
            Piece::Right => d.dz_right + d.m * (d.x_right - x),
        }
    }

    /// Value and slope of the left piece at `y'`.
    ///
    /// The middle piece `m/2 x^2 + b x + c` is evaluated about `y'` from these,
    /// which avoids cancelling large terms when the interval sits far from
    /// the origin.
    fn middle_anchor(&self) -> (f64, f64) {
        let d = &self.data;
        let t = self.y_prime - d.x_left;
        (
            d.z_left + d.dz_left * t - 0.5 * d.m * t * t,
            d.dz_left - d.m * t,
        )
    }

    /// Zero of `phi'` on the middle piece, present only when `phi'` changes
    /// sign between `y'` and `y`. Equal to `-b / m`.
    pub fn interior_stationary_point(&self) -> Option<f64> {
        let left = self.piece_derivative(Piece::Middle, self.y_prime);
        let right = self.piece_derivative(Piece::Middle, self.y);
        if left * right < 0.0 {
            Some(self.y_prime - left / self.data.m)
        } else {
            None
        }
    }

    fn stationary_value(&self, x_hat: f64) -> f64 {
        self.piece_value(Piece::Middle, x_hat)
    }

    /// Minimum of `phi` over the interval. Ties go to the leftmost candidate.
    pub fn characteristic(&self) -> Characteristic {
        let d = &self.data;
        let stationary = self.interior_stationary_point();
        let mut best = (d.x_left, d.z_left, MinimizerKind::LeftEnd);
        if let Some(x_hat) = stationary {
            let v = self.stationary_value(x_hat);
            if v < best.1 {
                best = (x_hat, v, MinimizerKind::Interior);
            }
        }
        if d.z_right < best.1 {
            best = (d.x_right, d.z_right, MinimizerKind::RightEnd);
        }
        let probe = match (stationary, best.2) {
            (Some(_), _) => ProbePoint::Stationary,
            (None, MinimizerKind::RightEnd) => ProbePoint::RightKnot,
            (None, _) => ProbePoint::LeftKnot,
        };
        Characteristic {
            h: best.0,
            value: best.1,
            kind: best.2,
            probe,
        }
    }

    /// Abscissa proposed for a new trial when this interval has the smallest
    /// positive characteristic.
    pub fn probe_point(&self, characteristic: &Characteristic) -> f64 {
        match characteristic.probe {
            ProbePoint::LeftKnot => self.y_prime,
            ProbePoint::Stationary => {
                self.y_prime - self.piece_derivative(Piece::Middle, self.y_prime) / self.data.m
            }
            ProbePoint::RightKnot => self.y,
        }
    }

    /// Smallest `x` in the interval with `phi(x) = 0`.
    ///
    /// Requires `z_left >= 0` and a non-positive characteristic. The piece
    /// holding the zero is found from the signs of `phi(y')`, `phi(x_hat)`
    /// and `phi(y)`.
    pub fn leftmost_zero(&self) -> Result<f64> {
        if self.data.z_left < 0.0 {
            return Err(Error::BadInitialCondition {
                value: self.data.z_left,
            });
        }
        let characteristic = self.characteristic();
        if characteristic.value > 0.0 {
            return Err(Error::NoZero {
                characteristic: characteristic.value,
            });
        }
        let root = if self.piece_value(Piece::Left, self.y_prime) <= 0.0 {
            self.left_piece_root()?
        } else {
            let right_piece_holds_zero = match self.interior_stationary_point() {
                Some(x_hat) => self.stationary_value(x_hat) > 0.0,
                None => self.piece_value(Piece::Middle, self.y) > 0.0,
            };
            if right_piece_holds_zero {
                self.right_piece_root()?
            } else {
                self.middle_piece_root()?
            }
        };
        Ok(root.clamp(self.data.x_left, self.data.x_right))
    }

    /// Right root of the left piece.
    fn left_piece_root(&self) -> Result<f64> {
        let d = &self.data;
        let disc = clamp_discriminant(
            d.dz_left * d.dz_left + 2.0 * d.m * d.z_left,
            d.dz_left * d.dz_left + 2.0 * d.m * d.z_left.abs(),
        )?;
        let s = disc.sqrt();
        // dz + s loses digits when dz < 0 and z is small; use the conjugate.
        let step = if d.dz_left < 0.0 {
            2.0 * d.z_left / (s - d.dz_left)
        } else {
            (d.dz_left + s) / d.m
        };
        Ok(d.x_left + step)
    }

    /// Right root of the right piece.
    fn right_piece_root(&self) -> Result<f64> {
        let d = &self.data;
        let disc = clamp_discriminant(
            d.dz_right * d.dz_right + 2.0 * d.m * d.z_right,
            d.dz_right * d.dz_right + 2.0 * d.m * d.z_right.abs(),
        )?;
        let s = disc.sqrt();
        let step = if d.dz_right < 0.0 {
            -2.0 * d.z_right / (d.dz_right - s)
        } else {
            (d.dz_right + s) / d.m
        };
        Ok(d.x_right + step)
    }

    /// Left root of the middle piece.
    fn middle_piece_root(&self) -> Result<f64> {
        let m = self.data.m;
        let (v0, p0) = self.middle_anchor();
        let disc = clamp_discriminant(p0 * p0 - 2.0 * m * v0, p0 * p0 + 2.0 * m * v0.abs())?;
        let s = disc.sqrt();
        let step = if p0 < 0.0 {
            2.0 * v0 / (s - p0)
        } else {
            (-p0 - s) / m
        };
        Ok(self.y_prime + step)
    }
}

/// Rounding can push a discriminant that is mathematically `>= 0` slightly
/// below zero; those are clamped, anything larger is reported.
fn clamp_discriminant(disc: f64, magnitude: f64) -> Result<f64> {
    if disc >= 0.0 {
        Ok(disc)
    } else if disc >= -1e-12 * magnitude.max(f64::MIN_POSITIVE) {
        Ok(0.0)
    } else {
        Err(Error::NumericalDiscriminant { discriminant: disc })
    }
}

#[cfg(test)]
mod tests {
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    use super::*;

    fn symmetric() -> IntervalData {
        IntervalData {
            x_left: 0.0,
            x_right: 1.0,
            z_left: 1.0,
            z_right: 1.0,
            dz_left: 0.0,
            dz_right: 0.0,
            m: 4.0,
        }
    }

    /// Data sampled from 1 - 3x - x^2/2 on [0, 1], bounded with m = 2.
    fn descending() -> IntervalData {
        IntervalData {
            x_left: 0.0,
            x_right: 1.0,
            z_left: 1.0,
            z_right: -2.5,
            dz_left: -3.0,
            dz_right: -4.0,
            m: 2.0,
        }
    }

    fn glue_error(s: &SupportFunction) -> (f64, f64) {
        let yp = s.y_prime();
        let y = s.y();
        let dv = (s.piece_value(Piece::Left, yp) - s.piece_value(Piece::Middle, yp))
            .abs()
            .max((s.piece_value(Piece::Middle, y) - s.piece_value(Piece::Right, y)).abs());
        let dd = (s.piece_derivative(Piece::Left, yp) - s.piece_derivative(Piece::Middle, yp))
            .abs()
            .max(
                (s.piece_derivative(Piece::Middle, y) - s.piece_derivative(Piece::Right, y)).abs(),
            );
        (dv, dd)
    }

    #[test]
    fn symmetric_knots_and_coefficients() {
        let s = SupportFunction::new(symmetric()).unwrap();
        assert_relative_eq!(s.y_prime(), 0.25);
        assert_relative_eq!(s.y(), 0.75);
        assert_relative_eq!(s.b(), -2.0);
        assert_relative_eq!(s.c(), 1.25);
        let (dv, dd) = glue_error(&s);
        assert!(dv < 1e-15 && dd < 1e-15);
    }

    #[test]
    fn symmetric_knot_value_matches_from_both_sides() {
        let s = SupportFunction::new(symmetric()).unwrap();
        assert_relative_eq!(s.piece_value(Piece::Left, 0.25), 0.875);
        assert_relative_eq!(s.piece_value(Piece::Middle, 0.25), 0.875);
    }

    #[test]
    fn evaluation() {
        let s = SupportFunction::new(symmetric()).unwrap();
        assert_relative_eq!(s.value(0.5).unwrap(), 0.75);
        assert_eq!(s.value(0.0).unwrap(), 1.0);
        assert_eq!(s.value(1.0).unwrap(), 1.0);
        assert_relative_eq!(s.derivative(0.5).unwrap(), 0.0);
        assert_eq!(s.derivative(0.0).unwrap(), 0.0);
        assert_eq!(s.derivative(1.0).unwrap(), 0.0);
        assert!(matches!(s.value(1.5), Err(Error::OutOfInterval { .. })));
        assert!(matches!(s.derivative(-0.1), Err(Error::OutOfInterval { .. })));
    }

    #[test]
    fn stationary_point_and_characteristic() {
        let s = SupportFunction::new(symmetric()).unwrap();
        let x_hat = s.interior_stationary_point().unwrap();
        assert_relative_eq!(x_hat, 0.5);
        assert_relative_eq!(s.c() - 0.5 * s.m() * x_hat * x_hat, 0.75);
        let ch = s.characteristic();
        assert_relative_eq!(ch.h, 0.5);
        assert_relative_eq!(ch.value, 0.75);
        assert_eq!(ch.kind, MinimizerKind::Interior);
        assert_eq!(ch.probe, ProbePoint::Stationary);
    }

    #[test]
    fn no_stationary_point_when_increasing() {
        let s = SupportFunction::new(IntervalData {
            z_right: 3.0,
            dz_left: 1.0,
            dz_right: 3.0,
            m: 2.0,
            ..symmetric()
        })
        .unwrap();
        assert!(s.interior_stationary_point().is_none());
        let ch = s.characteristic();
        assert_eq!(ch.kind, MinimizerKind::LeftEnd);
        assert_eq!(ch.probe, ProbePoint::LeftKnot);
    }

    #[test]
    fn endpoint_characteristics() {
        // strictly decreasing data: right endpoint wins
        let s = SupportFunction::new(IntervalData {
            z_left: 2.0,
            z_right: 1.0,
            dz_left: -1.0,
            dz_right: -1.0,
            m: 1.0,
            ..symmetric()
        })
        .unwrap();
        assert!(s.interior_stationary_point().is_none());
        let ch = s.characteristic();
        assert_eq!((ch.h, ch.value, ch.kind), (1.0, 1.0, MinimizerKind::RightEnd));
        assert_eq!(ch.probe, ProbePoint::RightKnot);
        assert_eq!(s.probe_point(&ch), s.y());
    }

    #[test]
    fn leftmost_zero_on_left_piece() {
        let s = SupportFunction::new(descending()).unwrap();
        assert!(s.piece_value(Piece::Left, s.y_prime()) <= 0.0);
        let x = s.leftmost_zero().unwrap();
        assert_relative_eq!(x, (-3.0 + 13f64.sqrt()) / 2.0, max_relative = 1e-14);
        assert_relative_eq!(x, 0.302_775_637_731_995, max_relative = 1e-12);
        assert!((1.0 - 3.0 * x - x * x).abs() < 1e-14);
    }

    #[test]
    fn leftmost_zero_at_left_end() {
        let s = SupportFunction::new(IntervalData {
            z_left: 0.0,
            dz_left: -1.0,
            z_right: -1.0,
            dz_right: -1.0,
            m: 1.0,
            ..symmetric()
        })
        .unwrap();
        assert_eq!(s.leftmost_zero().unwrap(), 0.0);

        let shifted = SupportFunction::new(IntervalData {
            z_left: 0.0,
            z_right: 0.0,
            ..symmetric()
        })
        .unwrap();
        assert_relative_eq!(shifted.piece_value(Piece::Left, 0.25), -0.125);
        assert_eq!(shifted.leftmost_zero().unwrap(), 0.0);
    }

    #[test]
    fn leftmost_zero_on_middle_and_right_pieces() {
        // symmetric bowl shifted down: phi(y') > 0, phi(x_hat) < 0 -> middle piece
        let s = SupportFunction::new(IntervalData {
            z_left: 0.2,
            z_right: 0.2,
            dz_left: 0.0,
            dz_right: 0.0,
            m: 4.0,
            ..symmetric()
        })
        .unwrap();
        let x = s.leftmost_zero().unwrap();
        assert!(x > s.y_prime() && x < 0.5);
        assert!(s.value(x).unwrap().abs() < 1e-12);

        // right endpoint negative with steep descent: zero on the right piece
        let s = SupportFunction::new(IntervalData {
            z_left: 1.0,
            z_right: -0.1,
            dz_left: 0.5,
            dz_right: -3.0,
            m: 4.0,
            ..symmetric()
        })
        .unwrap();
        let x = s.leftmost_zero().unwrap();
        assert_eq!(s.piece_at(x), Piece::Right);
        assert!(s.value(x).unwrap().abs() < 1e-12);
    }

    #[test]
    fn leftmost_zero_requires_nonpositive_characteristic() {
        let s = SupportFunction::new(symmetric()).unwrap();
        assert!(matches!(s.leftmost_zero(), Err(Error::NoZero { .. })));
        let below = SupportFunction::new(IntervalData {
            z_left: -1.0,
            z_right: -1.0,
            ..symmetric()
        })
        .unwrap();
        assert!(matches!(
            below.leftmost_zero(),
            Err(Error::BadInitialCondition { .. })
        ));
    }

    #[test]
    fn degenerate_slope_is_reported() {
        // 1 - 3x - x^2 has curvature exactly -2: denominator vanishes at m = 2
        let err = SupportFunction::new(IntervalData {
            z_right: -3.0,
            dz_right: -5.0,
            ..descending()
        })
        .unwrap_err();
        assert!(matches!(err, Error::DegenerateSlope { .. }));
        assert!(matches!(
            SupportFunction::new(IntervalData { m: 0.0, ..symmetric() }),
            Err(Error::InvalidBound { .. })
        ));
        assert!(matches!(
            SupportFunction::new(IntervalData { x_right: 0.0, ..symmetric() }),
            Err(Error::InvalidInterval { .. })
        ));
    }

    #[test]
    fn discriminant_clamp() {
        assert_eq!(clamp_discriminant(-1e-14, 1.0).unwrap(), 0.0);
        assert!(matches!(
            clamp_discriminant(-1e-6, 1.0),
            Err(Error::NumericalDiscriminant { .. })
        ));
    }

    /// Smallest bound that keeps both knots inside the interval.
    fn knot_bound(d: &IntervalData) -> f64 {
        let h = d.width();
        let g = 2.0 * (d.z_left - d.z_right) + (d.dz_right + d.dz_left) * h;
        (g.abs() + (g * g + (d.dz_right - d.dz_left).powi(2) * h * h).sqrt()) / (h * h)
    }

    fn interval_data() -> impl Strategy<Value = IntervalData> {
        (
            -5.0..5.0f64,
            0.01..4.0f64,
            -10.0..10.0f64,
            -10.0..10.0f64,
            -10.0..10.0f64,
            -10.0..10.0f64,
            1.05..3.0f64,
        )
            .prop_map(|(x0, w, z0, z1, d0, d1, r)| {
                let mut d = IntervalData {
                    x_left: x0,
                    x_right: x0 + w,
                    z_left: z0,
                    z_right: z1,
                    dz_left: d0,
                    dz_right: d1,
                    m: 1.0,
                };
                d.m = r * knot_bound(&d).max(1e-6);
                d
            })
    }

    proptest! {
        #[test]
        fn interpolates_endpoints(d in interval_data()) {
            let s = SupportFunction::new(d).unwrap();
            let sc = d.scale();
            prop_assert!((s.value(d.x_left).unwrap() - d.z_left).abs() <= 1e-12 * sc);
            prop_assert!((s.value(d.x_right).unwrap() - d.z_right).abs() <= 1e-12 * sc);
            let dsc = sc / d.width();
            prop_assert!((s.derivative(d.x_left).unwrap() - d.dz_left).abs() <= 1e-12 * dsc);
            prop_assert!((s.derivative(d.x_right).unwrap() - d.dz_right).abs() <= 1e-12 * dsc);
        }

        #[test]
        fn glued_and_ordered(d in interval_data()) {
            let s = SupportFunction::new(d).unwrap();
            let (dv, dd) = glue_error(&s);
            let sc = d.scale();
            prop_assert!(dv <= 1e-9 * sc, "value gap {dv}");
            prop_assert!(dd <= 1e-9 * sc / d.width(), "slope gap {dd}");
            let tol = 1e-12 * (1.0 + d.x_left.abs() + d.x_right.abs());
            prop_assert!(d.x_left - tol <= s.y_prime());
            prop_assert!(s.y_prime() <= s.y() + tol);
            prop_assert!(s.y() <= d.x_right + tol);
        }

        #[test]
        fn characteristic_below_endpoints(d in interval_data()) {
            let s = SupportFunction::new(d).unwrap();
            let ch = s.characteristic();
            prop_assert!(ch.value <= d.z_left.min(d.z_right));
            if ch.kind == MinimizerKind::Interior {
                prop_assert!(s.interior_stationary_point().is_some());
            }
        }

        #[test]
        fn leftmost_zero_is_first(d in interval_data()) {
            let s = SupportFunction::new(d).unwrap();
            let ch = s.characteristic();
            prop_assume!(ch.value <= 0.0 && d.z_left >= 0.0);
            let x = s.leftmost_zero().unwrap();
            let sc = d.scale() * (1.0 + d.x_left.abs() / d.width());
            prop_assert!(s.value(x).unwrap().abs() <= 1e-9 * sc);
            if ch.value < 0.0 && d.z_left > 0.0 {
                for i in 0..200 {
                    let t = d.x_left + (x - d.x_left) * (i as f64) / 200.0;
                    prop_assert!(s.value(t).unwrap() > -1e-9 * sc);
                }
            }
        }

        #[test]
        fn derivative_matches_finite_differences(d in interval_data(), u in 0.02..0.98f64) {
            let s = SupportFunction::new(d).unwrap();
            let x = d.x_left + u * d.width();
            let h = 1e-6 * d.width();
            let knot_gap = (x - s.y_prime()).abs().min((x - s.y()).abs());
            prop_assume!(knot_gap > 4.0 * h);
            let fd = (s.value(x + h).unwrap() - s.value(x - h).unwrap()) / (2.0 * h);
            let exact = s.derivative(x).unwrap();
            prop_assert!((fd - exact).abs() <= 1e-6 * exact.abs().max(d.scale() / d.width()));
        }
    }
}
