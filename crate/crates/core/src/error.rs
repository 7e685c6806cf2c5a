use std::io;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid interval [{x_left}, {x_right}]")]
    InvalidInterval { x_left: f64, x_right: f64 },

    #[error("smoothness bound {m} is not positive and finite")]
    InvalidBound { m: f64 },

    /// `m * (x_right - x_left) + dz_right - dz_left <= 0`: the bound is too
    /// small for the curvature implied by the endpoint data.
    #[error("degenerate slope on [{x_left}, {x_right}]: denominator {denominator}")]
    DegenerateSlope {
        x_left: f64,
        x_right: f64,
        denominator: f64,
    },

    #[error("abscissa {x} outside [{x_left}, {x_right}]")]
    OutOfInterval { x: f64, x_left: f64, x_right: f64 },

    #[error("support function has no zero (characteristic {characteristic} > 0)")]
    NoZero { characteristic: f64 },

    #[error("negative discriminant {discriminant}")]
    NumericalDiscriminant { discriminant: f64 },

    #[error("interval [{x_left}, {x_right}] is too narrow to estimate curvature")]
    DegenerateInterval { x_left: f64, x_right: f64 },

    #[error("f(a) = {value} at the left margin; a positive value is required")]
    BadInitialCondition { value: f64 },

    #[error("argument {value} outside the domain of {what}")]
    DomainError { what: &'static str, value: f64 },

    #[error("non-finite value near x = {x}")]
    NonFinite { x: f64 },

    #[error("unknown problem `{0}`")]
    UnknownProblem(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error(transparent)]
    Io(#[from] io::Error),
}
