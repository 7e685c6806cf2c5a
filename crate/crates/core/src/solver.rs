//! The first-root search and the grid baseline.
//!
//! Each iteration restricts attention to the effective trials (up to and
//! including the first negative value), builds a support function on every
//! effective interval and either drives towards the leftmost possible zero
//! or, when every characteristic is positive, refines the interval with the
//! smallest characteristic.

use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lipschitz::{build_curvature_table, CurvatureTable, EstimationParams};
use crate::problems::Problem;
use crate::support::{Characteristic, IntervalData, SupportFunction};
use crate::trial::Trial;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Method {
    /// One global bound `K` on the Lipschitz constant of `f'`.
    Fixed { lipschitz: f64 },
    /// Local bounds re-estimated from the trials at every iteration.
    Adaptive(EstimationParams),
}

/// Search accuracy `sigma`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Accuracy {
    /// Fraction of the domain width.
    Relative(f64),
    Absolute(f64),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverConfig {
    pub method: Method,
    pub accuracy: Accuracy,
    pub max_trials: usize,
}

pub const DEFAULT_SIGMA_FRACTION: f64 = 1e-4;
pub const DEFAULT_MAX_TRIALS: usize = 10_000;

impl SolverConfig {
    pub fn fixed(lipschitz: f64) -> Self {
        Self {
            method: Method::Fixed { lipschitz },
            accuracy: Accuracy::Relative(DEFAULT_SIGMA_FRACTION),
            max_trials: DEFAULT_MAX_TRIALS,
        }
    }

    pub fn adaptive(params: EstimationParams) -> Self {
        Self {
            method: Method::Adaptive(params),
            accuracy: Accuracy::Relative(DEFAULT_SIGMA_FRACTION),
            max_trials: DEFAULT_MAX_TRIALS,
        }
    }

    /// Adaptive bounds with `r = 1.2`, `xi = 1e-6`.
    pub fn adaptive_default() -> Self {
        Self::adaptive(EstimationParams::default())
    }

    pub fn with_accuracy(mut self, accuracy: Accuracy) -> Self {
        self.accuracy = accuracy;
        self
    }

    pub fn with_max_trials(mut self, max_trials: usize) -> Self {
        self.max_trials = max_trials;
        self
    }

    /// Absolute accuracy on `[a, b]`.
    pub fn sigma(&self, a: f64, b: f64) -> f64 {
        match self.accuracy {
            Accuracy::Relative(fraction) => fraction * (b - a),
            Accuracy::Absolute(sigma) => sigma,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let sigma_ok = match self.accuracy {
            Accuracy::Relative(s) | Accuracy::Absolute(s) => s > 0.0 && s.is_finite(),
        };
        if !sigma_ok {
            return Err(Error::InvalidConfig(format!("accuracy {:?} must be positive", self.accuracy)));
        }
        if self.max_trials < 2 {
            return Err(Error::InvalidConfig(format!(
                "max_trials = {} must be at least 2",
                self.max_trials
            )));
        }
        match self.method {
            Method::Fixed { lipschitz } if !(lipschitz > 0.0) || !lipschitz.is_finite() => {
                Err(Error::InvalidBound { m: lipschitz })
            }
            Method::Adaptive(p) => EstimationParams::new(p.reliability, p.floor).map(|_| ()),
            Method::Fixed { .. } => Ok(()),
        }
    }
}

/// One line of the trial log, in birth order.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TraceRecord {
    pub iter: usize,
    pub x: f64,
    pub f: f64,
    /// Absent for the grid scan, which never evaluates `f'`.
    pub fprime: Option<f64>,
    /// Effective point count after this trial.
    pub k: usize,
    /// Right margin after this trial.
    pub b_n: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum Outcome {
    /// `x_sigma` has `f(x_sigma) > 0` and lies within `sigma` of the first root.
    FirstRootFound { x_sigma: f64, trials_used: usize },
    /// No sign change was detected; `x_best` is the best trial.
    NoRootGlobalMin {
        x_best: f64,
        f_best: f64,
        trials_used: usize,
    },
    /// A non-positive characteristic survived on an interval of width at
    /// most `sigma` with both ends positive. Restart with a smaller `sigma`.
    PrecisionExhausted {
        interval: (f64, f64),
        trials_used: usize,
    },
    BudgetExhausted { best_so_far: f64, trials_used: usize },
}

impl Outcome {
    pub fn tag(&self) -> &'static str {
        match self {
            Outcome::FirstRootFound { .. } => "first_root_found",
            Outcome::NoRootGlobalMin { .. } => "no_root_global_min",
            Outcome::PrecisionExhausted { .. } => "precision_exhausted",
            Outcome::BudgetExhausted { .. } => "budget_exhausted",
        }
    }

    pub fn trials_used(&self) -> usize {
        match *self {
            Outcome::FirstRootFound { trials_used, .. }
            | Outcome::NoRootGlobalMin { trials_used, .. }
            | Outcome::PrecisionExhausted { trials_used, .. }
            | Outcome::BudgetExhausted { trials_used, .. } => trials_used,
        }
    }

    /// Representative abscissa: the root estimate, the minimizer, the left
    /// end of the unresolved interval, or the best point so far.
    pub fn x(&self) -> f64 {
        match *self {
            Outcome::FirstRootFound { x_sigma, .. } => x_sigma,
            Outcome::NoRootGlobalMin { x_best, .. } => x_best,
            Outcome::PrecisionExhausted { interval, .. } => interval.0,
            Outcome::BudgetExhausted { best_so_far, .. } => best_so_far,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Solution {
    pub outcome: Outcome,
    pub trace: Vec<TraceRecord>,
}

/// Support functions and characteristics of the effective intervals.
///
/// The scan stops at the first interval with a non-positive characteristic,
/// so `characteristics` may be shorter than the effective interval count.
#[derive(Debug, Clone, PartialEq)]
pub struct Scan {
    pub supports: Vec<SupportFunction>,
    pub characteristics: Vec<Characteristic>,
    pub first_nonpositive: Option<usize>,
}

/// Interval chosen for subdivision and the point proposed inside it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Candidate {
    /// Index into the sorted trials: the interval is `[t_i, t_{i+1}]`.
    pub interval: usize,
    pub x: f64,
    /// Whether `x` is the leftmost zero of a support function.
    pub from_zero: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Step {
    Continue,
    Finished(Outcome),
}

#[derive(Debug, Clone)]
pub struct SearchState {
    trials: Vec<Trial>,
    sigma: f64,
    births: usize,
    trace: Vec<TraceRecord>,
    bounds: Vec<f64>,
    table: Option<CurvatureTable>,
}

impl SearchState {
    /// Trials sorted by abscissa.
    pub fn trials(&self) -> &[Trial] {
        &self.trials
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    pub fn trace(&self) -> &[TraceRecord] {
        &self.trace
    }

    /// Number of effective trials `k` and the right margin `b_n = x_k`.
    ///
    /// `k` counts up to and including the first trial after the left margin
    /// with a negative value, or all trials if there is none.
    pub fn effective_points(&self) -> (usize, f64) {
        let k = effective_count(&self.trials);
        (k, self.trials[k - 1].x)
    }

    /// Bounds used in the most recent iteration, one per effective interval.
    pub fn last_bounds(&self) -> &[f64] {
        &self.bounds
    }

    /// Curvature table of the most recent adaptive iteration.
    pub fn last_table(&self) -> Option<&CurvatureTable> {
        self.table.as_ref()
    }

    /// Smoothness bounds for the current effective intervals.
    pub fn interval_bounds(&self, method: &Method) -> Result<(Vec<f64>, Option<CurvatureTable>)> {
        let (k, _) = self.effective_points();
        match method {
            Method::Fixed { lipschitz } => Ok((vec![*lipschitz; k - 1], None)),
            Method::Adaptive(params) => {
                let table = build_curvature_table(&self.trials[..k], params)?;
                Ok((table.bounds.clone(), Some(table)))
            }
        }
    }

    /// Builds support functions left to right, stopping at the first
    /// non-positive characteristic.
    pub fn scan(&self, bounds: &[f64]) -> Result<Scan> {
        let mut scan = Scan {
            supports: Vec::with_capacity(bounds.len()),
            characteristics: Vec::with_capacity(bounds.len()),
            first_nonpositive: None,
        };
        for (i, (w, &m)) in self.trials.windows(2).zip(bounds).enumerate() {
            let support = SupportFunction::new(IntervalData {
                x_left: w[0].x,
                x_right: w[1].x,
                z_left: w[0].z,
                z_right: w[1].z,
                dz_left: w[0].dz,
                dz_right: w[1].dz,
                m,
            })?;
            let characteristic = support.characteristic();
            scan.supports.push(support);
            scan.characteristics.push(characteristic);
            if characteristic.value <= 0.0 {
                scan.first_nonpositive = Some(i);
                break;
            }
        }
        Ok(scan)
    }

    /// The leftmost support zero if any characteristic is non-positive,
    /// otherwise the probe point of the leftmost interval of minimal
    /// characteristic.
    pub fn next_trial_point(&self, scan: &Scan) -> Result<Candidate> {
        if let Some(i) = scan.first_nonpositive {
            return Ok(Candidate {
                interval: i,
                x: scan.supports[i].leftmost_zero()?,
                from_zero: true,
            });
        }
        let mut best = 0;
        for (i, c) in scan.characteristics.iter().enumerate().skip(1) {
            if c.value < scan.characteristics[best].value {
                best = i;
            }
        }
        let support = &scan.supports[best];
        Ok(Candidate {
            interval: best,
            x: support.probe_point(&scan.characteristics[best]),
            from_zero: false,
        })
    }

    fn insert(&mut self, trial: Trial) {
        let pos = self.trials.partition_point(|t| t.x < trial.x);
        self.trials.insert(pos, trial);
        self.births += 1;
        self.record(trial);
    }

    fn record(&mut self, trial: Trial) {
        let (k, b_n) = self.effective_points();
        self.trace.push(TraceRecord {
            iter: trial.birth,
            x: trial.x,
            f: trial.z,
            fprime: Some(trial.dz),
            k,
            b_n,
        });
    }

    /// Smallest observed value, leftmost on ties.
    fn best_trial(&self) -> &Trial {
        let mut best = &self.trials[0];
        for t in &self.trials[1..] {
            if t.z < best.z {
                best = t;
            }
        }
        best
    }
}

fn effective_count(trials: &[Trial]) -> usize {
    trials
        .iter()
        .enumerate()
        .skip(1)
        .find(|(_, t)| t.z < 0.0)
        .map_or(trials.len(), |(i, _)| i + 1)
}

fn evaluate(problem: &Problem, x: f64, birth: usize) -> Result<Trial> {
    let z = problem.value(x);
    let dz = problem.derivative(x);
    if !z.is_finite() || !dz.is_finite() {
        return Err(Error::NonFinite { x });
    }
    Ok(Trial::new(x, z, dz, birth))
}

/// Evaluates the two endpoint trials.
pub fn initialize(problem: &Problem, config: &SolverConfig) -> Result<SearchState> {
    config.validate()?;
    let sigma = config.sigma(problem.a, problem.b);
    let mut state = SearchState {
        trials: Vec::with_capacity(64),
        sigma,
        births: 0,
        trace: Vec::with_capacity(64),
        bounds: Vec::new(),
        table: None,
    };
    let left = evaluate(problem, problem.a, 0)?;
    if !(left.z > 0.0) {
        return Err(Error::BadInitialCondition { value: left.z });
    }
    let right = evaluate(problem, problem.b, 1)?;
    state.trials = vec![left, right];
    state.births = 2;
    state.record(left);
    state.record(right);
    Ok(state)
}

/// Whether the chosen interval is already no wider than `sigma`.
pub fn stop_check(state: &SearchState, chosen_interval: usize, sigma: f64) -> bool {
    let t = state.trials();
    t[chosen_interval + 1].x - t[chosen_interval].x <= sigma
}

fn stop_outcome(state: &SearchState, candidate: &Candidate) -> Outcome {
    let n = state.trials.len();
    let left = state.trials[candidate.interval];
    let right = state.trials[candidate.interval + 1];
    if !candidate.from_zero {
        let best = state.best_trial();
        return Outcome::NoRootGlobalMin {
            x_best: best.x,
            f_best: best.z,
            trials_used: n,
        };
    }
    if right.z <= 0.0 {
        Outcome::FirstRootFound {
            x_sigma: left.x,
            trials_used: n,
        }
    } else {
        Outcome::PrecisionExhausted {
            interval: (left.x, right.x),
            trials_used: n,
        }
    }
}

fn budget_outcome(state: &SearchState) -> Outcome {
    let (k, _) = state.effective_points();
    let n = state.trials.len();
    let best_so_far = if state.trials[k - 1].z < 0.0 {
        state.trials[k - 2].x
    } else {
        state.best_trial().x
    };
    Outcome::BudgetExhausted {
        best_so_far,
        trials_used: n,
    }
}

/// One iteration: bounds, scan, candidate, stop rule, evaluation.
pub fn step(state: &mut SearchState, problem: &Problem, config: &SolverConfig) -> Result<Step> {
    let (bounds, table) = state.interval_bounds(&config.method)?;
    let scan = state.scan(&bounds)?;
    state.bounds = bounds;
    state.table = table;
    let candidate = state.next_trial_point(&scan)?;
    if stop_check(state, candidate.interval, state.sigma) {
        return Ok(Step::Finished(stop_outcome(state, &candidate)));
    }
    if state.trials.len() >= config.max_trials {
        return Ok(Step::Finished(budget_outcome(state)));
    }
    let lo = state.trials[candidate.interval].x + 0.5 * state.sigma;
    let hi = state.trials[candidate.interval + 1].x - 0.5 * state.sigma;
    let x = candidate.x.clamp(lo, hi);
    let trial = evaluate(problem, x, state.births)?;
    state.insert(trial);
    Ok(Step::Continue)
}

/// Runs the search to completion.
pub fn solve(problem: &Problem, config: &SolverConfig) -> Result<Solution> {
    let mut state = initialize(problem, config)?;
    loop {
        if let Step::Finished(outcome) = step(&mut state, problem, config)? {
            return Ok(Solution {
                outcome,
                trace: state.trace,
            });
        }
    }
}

/// Writes one JSON object per record, newline terminated.
pub fn write_trace_jsonl<W: Write>(trace: &[TraceRecord], mut out: W) -> Result<()> {
    for record in trace {
        serde_json::to_writer(&mut out, record).map_err(std::io::Error::from)?;
        out.write_all(b"\n")?;
    }
    Ok(())
}

/// Left-to-right scan of the cell-centred mesh `a + (i - 1/2) sigma`,
/// `i = 1..=cap`, stopping at the first negative value.
///
/// `trials_used` counts the positive mesh points passed before the sign
/// change; the negative point itself ends the scan and is not counted.
/// `cap` defaults to `ceil((b - a) / sigma)`.
pub fn grid_search(problem: &Problem, sigma: f64, cap: Option<usize>) -> Result<Solution> {
    if !(sigma > 0.0) || !sigma.is_finite() {
        return Err(Error::InvalidConfig(format!("sigma = {sigma} must be positive")));
    }
    let fa = problem.value(problem.a);
    if !(fa > 0.0) {
        return Err(Error::BadInitialCondition { value: fa });
    }
    let cap = cap.unwrap_or_else(|| mesh_cells(problem.width(), sigma));
    let mut trace = Vec::with_capacity(cap.min(1 << 16));
    let mut last_positive = problem.a;
    let mut best = (problem.a, fa);
    for i in 1..=cap {
        let x = problem.a + (i as f64 - 0.5) * sigma;
        let z = problem.value(x);
        if !z.is_finite() {
            return Err(Error::NonFinite { x });
        }
        if z < 0.0 {
            return Ok(Solution {
                outcome: Outcome::FirstRootFound {
                    x_sigma: last_positive,
                    trials_used: i - 1,
                },
                trace,
            });
        }
        trace.push(TraceRecord {
            iter: i - 1,
            x,
            f: z,
            fprime: None,
            k: i,
            b_n: problem.b,
        });
        last_positive = x;
        if z < best.1 {
            best = (x, z);
        }
    }
    Ok(Solution {
        outcome: Outcome::NoRootGlobalMin {
            x_best: best.0,
            f_best: best.1,
            trials_used: cap,
        },
        trace,
    })
}

/// `ceil(width / sigma)`, ignoring excess below one part in 1e9 of a cell.
fn mesh_cells(width: f64, sigma: f64) -> usize {
    let cells = width / sigma;
    let rounded = cells.round();
    if (cells - rounded).abs() <= 1e-9 * rounded.max(1.0) {
        rounded as usize
    } else {
        cells.ceil() as usize
    }
}
