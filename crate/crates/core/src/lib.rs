//! First root from the left of a function with a Lipschitz-continuous
//! derivative.
//!
//! Given `f` on `[a, b]` with `f(a) > 0`, the solvers in this crate locate the
//! smallest `x` with `f(x) = 0` to within a prescribed accuracy `sigma`, or,
//! when `f` stays positive, an approximation of its global minimizer. Two
//! geometric methods are provided, both built on smooth piecewise-quadratic
//! minorants of `f`:
//!
//! * a fixed global bound `K` on the Lipschitz constant of `f'`
//!   ([`Method::Fixed`]);
//! * adaptive per-interval estimates of the local constants
//!   ([`Method::Adaptive`]).
//!
//! A left-to-right mesh scan ([`grid_search`]) serves as the baseline.
//!
//! ```
//! use firstroot::{problems, solve, Outcome, SolverConfig};
//!
//! let problem = problems::lookup("t01").unwrap();
//! let solution = solve(&problem, &SolverConfig::adaptive_default()).unwrap();
//! match solution.outcome {
//!     Outcome::FirstRootFound { x_sigma, .. } => assert!((x_sigma - 3.0117).abs() < 1.4e-3),
//!     other => panic!("unexpected outcome {other:?}"),
//! }
//! ```

// `!(x > 0.0)` is used on purpose so NaN inputs are rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bench;
mod error;
pub mod lipschitz;
pub mod problems;
pub mod solver;
pub mod support;
mod trial;

pub use error::{Error, Result};
pub use lipschitz::{build_curvature_table, interval_curvature, CurvatureTable, EstimationParams};
pub use problems::Problem;
pub use solver::{
    grid_search, initialize, solve, step, stop_check, write_trace_jsonl, Accuracy, Candidate, Method, Outcome,
    Scan, SearchState, Solution, SolverConfig, Step, TraceRecord,
};
pub use support::{Characteristic, IntervalData, MinimizerKind, ProbePoint, SupportFunction};
pub use trial::Trial;
