//! Built-in problems: twenty test functions on `[0.2, 7]` and two filter
//! cutoff-frequency objectives.

mod filters;
mod oracles;
mod test_functions;

use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};

pub use filters::{
    chebyshev_transfer, cutoff_objective, find_fmax, passband_transfer, ChebyshevParams,
    PassbandParams, CHEBYSHEV_DOMAIN, PASSBAND_DOMAIN,
};
pub use oracles::{exact_lipschitz_oracle, grid_minimum, numeric_derivative};

/// Scalar function of one variable, shareable across threads.
pub type Callable = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// Grid points used for the registry's Lipschitz constants.
pub const ORACLE_GRID_POINTS: usize = 200_000;

/// Trial counts published for the grid scan and both algorithms.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ReferenceTrials {
    pub grid: usize,
    pub a1: usize,
    pub a2: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProblemKind {
    TestFunction,
    Filter,
}

#[derive(Clone)]
pub struct Problem {
    pub id: String,
    pub name: String,
    pub a: f64,
    pub b: f64,
    pub f: Callable,
    pub df: Callable,
    pub kind: ProblemKind,
    pub reference_frl: Option<f64>,
    pub root_count: Option<usize>,
    pub reference_extrema: Option<usize>,
    /// Bound on the Lipschitz constant of `f'`, used by the fixed-bound method.
    pub lipschitz_k: Option<f64>,
    pub reference_trials: Option<ReferenceTrials>,
}

impl Problem {
    pub fn new(
        id: impl Into<String>,
        name: impl Into<String>,
        (a, b): (f64, f64),
        f: impl Fn(f64) -> f64 + Send + Sync + 'static,
        df: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) -> Result<Self> {
        if !(a < b) || !a.is_finite() || !b.is_finite() {
            return Err(Error::InvalidInterval {
                x_left: a,
                x_right: b,
            });
        }
        Ok(Self {
            id: id.into(),
            name: name.into(),
            a,
            b,
            f: Arc::new(f),
            df: Arc::new(df),
            kind: ProblemKind::TestFunction,
            reference_frl: None,
            root_count: None,
            reference_extrema: None,
            lipschitz_k: None,
            reference_trials: None,
        })
    }

    pub fn value(&self, x: f64) -> f64 {
        (self.f)(x)
    }

    pub fn derivative(&self, x: f64) -> f64 {
        (self.df)(x)
    }

    pub fn width(&self) -> f64 {
        self.b - self.a
    }

    pub fn with_lipschitz(mut self, k: f64) -> Self {
        self.lipschitz_k = Some(k);
        self
    }
}

impl fmt::Debug for Problem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Problem")
            .field("id", &self.id)
            .field("name", &self.name)
            .field("domain", &(self.a, self.b))
            .field("kind", &self.kind)
            .field("reference_frl", &self.reference_frl)
            .field("root_count", &self.root_count)
            .field("lipschitz_k", &self.lipschitz_k)
            .finish_non_exhaustive()
    }
}

/// The twenty test functions, with Lipschitz constants from
/// [`exact_lipschitz_oracle`].
pub fn registry() -> &'static [Problem] {
    static REGISTRY: OnceLock<Vec<Problem>> = OnceLock::new();
    REGISTRY.get_or_init(|| {
        test_functions::table()
            .into_iter()
            .map(|p| {
                let k = exact_lipschitz_oracle(&p, ORACLE_GRID_POINTS);
                p.with_lipschitz(k)
            })
            .collect()
    })
}

fn chebyshev() -> &'static Problem {
    static CELL: OnceLock<Problem> = OnceLock::new();
    CELL.get_or_init(|| filters::chebyshev_problem(ORACLE_GRID_POINTS))
}

fn passband() -> &'static Problem {
    static CELL: OnceLock<Problem> = OnceLock::new();
    CELL.get_or_init(|| filters::passband_problem(ORACLE_GRID_POINTS))
}

/// Every problem id, in listing order.
pub fn ids() -> Vec<String> {
    let mut ids: Vec<String> = (1..=20).map(|i| format!("t{i:02}")).collect();
    ids.push("chebyshev".into());
    ids.push("passband".into());
    ids
}

/// Resolves a problem id (`t01`..`t20`, `chebyshev`, `passband`).
/// Filter problems compute their peak transfer value on first use.
pub fn lookup(id: &str) -> Result<Problem> {
    match id {
        "chebyshev" => Ok(chebyshev().clone()),
        "passband" => Ok(passband().clone()),
        _ => registry()
            .iter()
            .find(|p| p.id == id)
            .cloned()
            .ok_or_else(|| Error::UnknownProblem(id.to_string())),
    }
}

/// One listing line: id, expression, domain, root count, first root.
pub fn listing_line(p: &Problem) -> String {
    let roots = p.root_count.map_or("-".to_string(), |n| n.to_string());
    let frl = p.reference_frl.map_or("-".to_string(), |x| x.to_string());
    format!(
        "{}\t{}\t[{}, {}]\troots={}\tfrl={}",
        p.id, p.name, p.a, p.b, roots, frl
    )
}
