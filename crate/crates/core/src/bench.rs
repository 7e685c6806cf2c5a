//! Experiment matrix over problems and methods, with CSV and markdown
//! reports.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::lipschitz::EstimationParams;
use crate::problems::{self, Problem, ProblemKind};
use crate::solver::{grid_search, solve, Accuracy, Outcome, SolverConfig, DEFAULT_MAX_TRIALS};

pub const CSV_HEADER: &str = "problem,method,trials,outcome,x,f,ref_frl,abs_err";

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MethodKind {
    Grid,
    A1,
    A2,
}

impl MethodKind {
    pub const ALL: [MethodKind; 3] = [MethodKind::Grid, MethodKind::A1, MethodKind::A2];

    pub fn as_str(&self) -> &'static str {
        match self {
            MethodKind::Grid => "grid",
            MethodKind::A1 => "a1",
            MethodKind::A2 => "a2",
        }
    }
}

impl FromStr for MethodKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "grid" => Ok(MethodKind::Grid),
            "a1" => Ok(MethodKind::A1),
            "a2" => Ok(MethodKind::A2),
            other => Err(Error::InvalidConfig(format!("unknown method `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Csv,
    Markdown,
}

impl FromStr for ReportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(ReportFormat::Csv),
            "markdown" | "md" => Ok(ReportFormat::Markdown),
            other => Err(Error::InvalidConfig(format!("unknown format `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchConfig {
    pub problem_ids: Vec<String>,
    pub methods: Vec<MethodKind>,
    pub sigma_fraction: f64,
    pub r: f64,
    pub xi: f64,
    pub output_path: Option<PathBuf>,
    pub format: ReportFormat,
}

impl Default for BenchConfig {
    fn default() -> Self {
        Self {
            problem_ids: problems::ids(),
            methods: MethodKind::ALL.to_vec(),
            sigma_fraction: 1e-4,
            r: 1.2,
            xi: 1e-6,
            output_path: None,
            format: ReportFormat::Csv,
        }
    }
}

fn list(value: &str) -> Vec<String> {
    value
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(String::from)
        .collect()
}

/// Comma-separated ids; `all` selects every registered problem.
pub fn parse_problem_ids(value: &str) -> Vec<String> {
    if value.trim() == "all" {
        problems::ids()
    } else {
        list(value)
    }
}

pub fn parse_methods(value: &str) -> Result<Vec<MethodKind>> {
    list(value).iter().map(|m| m.parse()).collect()
}

fn number(key: &str, value: &str) -> Result<f64> {
    value
        .parse()
        .map_err(|_| Error::InvalidConfig(format!("`{key}` expects a number, got `{value}`")))
}

impl BenchConfig {
    /// Parses `key = value` lines. Blank lines and `#` comments are skipped;
    /// missing keys keep their defaults. Lists are comma separated, and
    /// `problem_ids = all` selects every registered problem.
    pub fn parse(text: &str) -> Result<Self> {
        let mut config = Self::default();
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::InvalidConfig(format!("line {}: expected key = value", n + 1)))?;
            let (key, value) = (key.trim(), value.trim());
            match key {
                "problem_ids" => config.problem_ids = parse_problem_ids(value),
                "methods" => config.methods = parse_methods(value)?,
                "sigma_fraction" => config.sigma_fraction = number(key, value)?,
                "r" => config.r = number(key, value)?,
                "xi" => config.xi = number(key, value)?,
                "output_path" => config.output_path = Some(PathBuf::from(value)),
                "format" => config.format = value.parse()?,
                other => {
                    return Err(Error::InvalidConfig(format!("line {}: unknown key `{other}`", n + 1)))
                }
            }
        }
        config.validate()?;
        Ok(config)
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    pub fn validate(&self) -> Result<()> {
        if self.problem_ids.is_empty() {
            return Err(Error::InvalidConfig("no problems selected".into()));
        }
        if self.methods.is_empty() {
            return Err(Error::InvalidConfig("no methods selected".into()));
        }
        if !(self.sigma_fraction > 0.0) || !self.sigma_fraction.is_finite() {
            return Err(Error::InvalidConfig(format!(
                "sigma_fraction = {} must be positive",
                self.sigma_fraction
            )));
        }
        EstimationParams::new(self.r, self.xi)?;
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchRow {
    pub problem_id: String,
    pub kind: ProblemKind,
    pub method: MethodKind,
    pub trials_used: usize,
    pub outcome_tag: &'static str,
    pub x_result: f64,
    pub f_at_result: f64,
    pub reference_frl: Option<f64>,
    pub abs_error: Option<f64>,
}

/// Runs one problem with one method.
pub fn run_one(problem: &Problem, method: MethodKind, config: &BenchConfig) -> Result<BenchRow> {
    let accuracy = Accuracy::Relative(config.sigma_fraction);
    let outcome = match method {
        MethodKind::Grid => {
            let sigma = config.sigma_fraction * problem.width();
            grid_search(problem, sigma, None)?.outcome
        }
        MethodKind::A1 => {
            let k = problem
                .lipschitz_k
                .ok_or_else(|| Error::InvalidConfig(format!("{} has no Lipschitz constant", problem.id)))?;
            let solver = SolverConfig::fixed(k).with_accuracy(accuracy).with_max_trials(DEFAULT_MAX_TRIALS);
            solve(problem, &solver)?.outcome
        }
        MethodKind::A2 => {
            let params = EstimationParams::new(config.r, config.xi)?;
            let solver = SolverConfig::adaptive(params).with_accuracy(accuracy);
            solve(problem, &solver)?.outcome
        }
    };
    let x = outcome.x();
    let abs_error = match (outcome, problem.reference_frl) {
        (Outcome::FirstRootFound { x_sigma, .. }, Some(frl)) => Some((x_sigma - frl).abs()),
        _ => None,
    };
    Ok(BenchRow {
        problem_id: problem.id.clone(),
        kind: problem.kind,
        method,
        trials_used: outcome.trials_used(),
        outcome_tag: outcome.tag(),
        x_result: x,
        f_at_result: problem.value(x),
        reference_frl: problem.reference_frl,
        abs_error,
    })
}

/// One row per (problem, method), in configuration order. Rows are computed
/// in parallel.
pub fn run_matrix(config: &BenchConfig) -> Result<Vec<BenchRow>> {
    config.validate()?;
    let problems = config
        .problem_ids
        .iter()
        .map(|id| problems::lookup(id))
        .collect::<Result<Vec<_>>>()?;
    let jobs: Vec<(&Problem, MethodKind)> = problems
        .iter()
        .flat_map(|p| config.methods.iter().map(move |&m| (p, m)))
        .collect();
    jobs.par_iter().map(|&(p, m)| run_one(p, m, config)).collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct Summary {
    /// Mean trial count per method, in first-appearance order.
    pub averages: Vec<(MethodKind, f64)>,
}

/// Mean `trials_used` per method over the test-function rows. Filter rows
/// are only averaged when no test-function row is present.
pub fn summarize(rows: &[BenchRow]) -> Summary {
    let tests: Vec<&BenchRow> = rows.iter().filter(|r| r.kind == ProblemKind::TestFunction).collect();
    let pool: Vec<&BenchRow> = if tests.is_empty() { rows.iter().collect() } else { tests };
    let mut methods: Vec<MethodKind> = Vec::new();
    for r in &pool {
        if !methods.contains(&r.method) {
            methods.push(r.method);
        }
    }
    let averages = methods
        .into_iter()
        .map(|m| {
            let counts: Vec<usize> = pool.iter().filter(|r| r.method == m).map(|r| r.trials_used).collect();
            (m, counts.iter().sum::<usize>() as f64 / counts.len() as f64)
        })
        .collect();
    Summary { averages }
}

fn opt(v: Option<f64>) -> String {
    v.map_or(String::new(), |x| x.to_string())
}

fn cells(row: &BenchRow) -> [String; 8] {
    [
        row.problem_id.clone(),
        row.method.as_str().to_string(),
        row.trials_used.to_string(),
        row.outcome_tag.to_string(),
        row.x_result.to_string(),
        row.f_at_result.to_string(),
        opt(row.reference_frl),
        opt(row.abs_error),
    ]
}

fn average_cells(summary: &Summary) -> [String; 8] {
    let methods: Vec<&str> = summary.averages.iter().map(|(m, _)| m.as_str()).collect();
    let values: Vec<String> = summary.averages.iter().map(|(_, v)| format!("{v:.2}")).collect();
    [
        "Average".into(),
        methods.join(";"),
        values.join(";"),
        "average".into(),
        String::new(),
        String::new(),
        String::new(),
        String::new(),
    ]
}

/// Renders the report. The average line is written last when a summary with
/// at least one method is given.
pub fn render(rows: &[BenchRow], summary: Option<&Summary>, format: ReportFormat) -> String {
    let summary = summary.filter(|s| !s.averages.is_empty());
    let mut out = String::new();
    match format {
        ReportFormat::Csv => {
            out.push_str(CSV_HEADER);
            out.push('\n');
            for row in rows {
                out.push_str(&cells(row).join(","));
                out.push('\n');
            }
            if let Some(s) = summary {
                out.push_str(&average_cells(s).join(","));
                out.push('\n');
            }
        }
        ReportFormat::Markdown => {
            let header: Vec<&str> = CSV_HEADER.split(',').collect();
            let _ = writeln!(out, "| {} |", header.join(" | "));
            let _ = writeln!(out, "|{}", "---|".repeat(header.len()));
            for row in rows {
                let _ = writeln!(out, "| {} |", cells(row).join(" | "));
            }
            if let Some(s) = summary {
                let _ = writeln!(out, "| {} |", average_cells(s).join(" | "));
            }
        }
    }
    out
}

pub fn emit_report(rows: &[BenchRow], summary: Option<&Summary>, format: ReportFormat, path: &Path) -> Result<()> {
    std::fs::write(path, render(rows, summary, format))?;
    Ok(())
}
