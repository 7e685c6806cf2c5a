use std::f64::consts::PI;

use super::{Problem, ProblemKind, ReferenceTrials};

const DOMAIN: (f64, f64) = (0.2, 7.0);

struct Row {
    name: &'static str,
    f: fn(f64) -> f64,
    df: fn(f64) -> f64,
    roots: Option<usize>,
    frl: Option<f64>,
    extrema: usize,
    trials: [usize; 3],
}

fn f14(x: f64) -> f64 {
    (0..=5)
        .map(|k| {
            let k = k as f64;
            k * ((k + 1.0) * x + k).cos()
        })
        .sum::<f64>()
        + 12.0
}

fn df14(x: f64) -> f64 {
    (0..=5)
        .map(|k| {
            let k = k as f64;
            -k * (k + 1.0) * ((k + 1.0) * x + k).sin()
        })
        .sum()
}

const ROWS: [Row; 20] = [
    Row {
        name: "-0.5x^2 ln(x) + 5",
        f: |x| -0.5 * x * x * x.ln() + 5.0,
        df: |x| -x * x.ln() - 0.5 * x,
        roots: Some(1),
        frl: Some(3.0117),
        extrema: 3,
        trials: [4135, 5, 5],
    },
    Row {
        name: "-exp(-x) sin(2 pi x) + 1",
        f: |x| -(-x).exp() * (2.0 * PI * x).sin() + 1.0,
        df: |x| (-x).exp() * ((2.0 * PI * x).sin() - 2.0 * PI * (2.0 * PI * x).cos()),
        roots: None,
        frl: None,
        extrema: 13,
        trials: [10000, 31, 34],
    },
    Row {
        name: "-sqrt(x) sin(x) + 1",
        f: |x| -x.sqrt() * x.sin() + 1.0,
        df: |x| -0.5 / x.sqrt() * x.sin() - x.sqrt() * x.cos(),
        roots: Some(3),
        frl: Some(1.17479),
        extrema: 4,
        trials: [1295, 6, 5],
    },
    Row {
        name: "x sin(x) + sin(10x/3) + ln(x) - 0.84x + 1.3",
        f: |x| x * x.sin() + (10.0 * x / 3.0).sin() + x.ln() - 0.84 * x + 1.3,
        df: |x| x.sin() + x * x.cos() + 10.0 / 3.0 * (10.0 * x / 3.0).cos() + 1.0 / x - 0.84,
        roots: Some(2),
        frl: Some(2.96091),
        extrema: 6,
        trials: [4060, 12, 7],
    },
    Row {
        name: "x + sin(5x)",
        f: |x| x + (5.0 * x).sin(),
        df: |x| 1.0 + 5.0 * (5.0 * x).cos(),
        roots: Some(2),
        frl: Some(0.82092),
        extrema: 13,
        trials: [5470, 7, 11],
    },
    Row {
        name: "-x sin(x) + 5",
        f: |x| -x * x.sin() + 5.0,
        df: |x| -x.sin() - x * x.cos(),
        roots: None,
        frl: None,
        extrema: 4,
        trials: [10000, 10, 9],
    },
    Row {
        name: "sin(x) cos(x) - 1.5 sin^2(x) + 1.2",
        f: |x| x.sin() * x.cos() - 1.5 * x.sin().powi(2) + 1.2,
        df: |x| (2.0 * x).cos() - 1.5 * (2.0 * x).sin(),
        roots: Some(4),
        frl: Some(1.34075),
        extrema: 7,
        trials: [1678, 5, 6],
    },
    Row {
        name: "2 cos(x) + cos(2x) + 5",
        f: |x| 2.0 * x.cos() + (2.0 * x).cos() + 5.0,
        df: |x| -2.0 * x.sin() - 2.0 * (2.0 * x).sin(),
        roots: None,
        frl: None,
        extrema: 6,
        trials: [10000, 36, 24],
    },
    Row {
        name: "2 sin(x) exp(-x)",
        f: |x| 2.0 * x.sin() * (-x).exp(),
        df: |x| 2.0 * (-x).exp() * (x.cos() - x.sin()),
        roots: Some(2),
        frl: Some(3.1416),
        extrema: 4,
        trials: [4326, 15, 10],
    },
    Row {
        name: "(3x - 1.4) sin(18x) + 1.7",
        f: |x| (3.0 * x - 1.4) * (18.0 * x).sin() + 1.7,
        df: |x| 3.0 * (18.0 * x).sin() + 18.0 * (3.0 * x - 1.4) * (18.0 * x).cos(),
        roots: Some(34),
        frl: Some(1.26554),
        extrema: 42,
        trials: [1567, 55, 12],
    },
    Row {
        name: "(x + 1)^3 / x^2 - 7.1",
        f: |x| (x + 1.0).powi(3) / (x * x) - 7.1,
        df: |x| 3.0 * (x + 1.0).powi(2) / (x * x) - 2.0 * (x + 1.0).powi(3) / x.powi(3),
        roots: Some(2),
        frl: Some(1.36465),
        extrema: 3,
        trials: [1713, 69, 60],
    },
    Row {
        name: "sin(5x) + 2 for x <= pi, 5 sin(x) + 2 for x > pi",
        f: |x| {
            if x <= PI {
                (5.0 * x).sin() + 2.0
            } else {
                5.0 * x.sin() + 2.0
            }
        },
        df: |x| {
            if x <= PI {
                5.0 * (5.0 * x).cos()
            } else {
                5.0 * x.cos()
            }
        },
        roots: Some(2),
        frl: Some(3.55311),
        extrema: 8,
        trials: [4931, 13, 6],
    },
    Row {
        name: "exp(sin(3x))",
        f: |x| (3.0 * x).sin().exp(),
        df: |x| 3.0 * (3.0 * x).cos() * (3.0 * x).sin().exp(),
        roots: None,
        frl: None,
        extrema: 9,
        trials: [10000, 99, 39],
    },
    Row {
        name: "sum_{k=0..5} k cos((k+1)x + k) + 12",
        f: f14,
        df: df14,
        roots: Some(2),
        frl: Some(4.78308),
        extrema: 15,
        trials: [6740, 23, 18],
    },
    Row {
        name: "2(x - 3)^2 - exp(x/2) + 5",
        f: |x| 2.0 * (x - 3.0).powi(2) - (x / 2.0).exp() + 5.0,
        df: |x| 4.0 * (x - 3.0) - 0.5 * (x / 2.0).exp(),
        roots: Some(2),
        frl: Some(3.281119),
        extrema: 4,
        trials: [4531, 9, 9],
    },
    Row {
        name: "-exp(sin(x)) + 4",
        f: |x| -x.sin().exp() + 4.0,
        df: |x| -x.cos() * x.sin().exp(),
        roots: None,
        frl: None,
        extrema: 4,
        trials: [10000, 7, 12],
    },
    Row {
        name: "sqrt(x) sin^2(x)",
        f: |x| x.sqrt() * x.sin().powi(2),
        df: |x| 0.5 / x.sqrt() * x.sin().powi(2) + x.sqrt() * (2.0 * x).sin(),
        roots: Some(4),
        frl: Some(3.141128),
        extrema: 6,
        trials: [4325, 20, 17],
    },
    Row {
        name: "cos(x) - sin(5x) + 1",
        f: |x| x.cos() - (5.0 * x).sin() + 1.0,
        df: |x| -x.sin() - 5.0 * (5.0 * x).cos(),
        roots: Some(6),
        frl: Some(1.57079),
        extrema: 13,
        trials: [2016, 11, 10],
    },
    Row {
        name: "-x - sin(3x) + 1.6",
        f: |x| -x - (3.0 * x).sin() + 1.6,
        df: |x| -1.0 - 3.0 * (3.0 * x).cos(),
        roots: Some(3),
        frl: Some(1.96857),
        extrema: 9,
        trials: [2601, 12, 12],
    },
    Row {
        name: "cos(x) + 2 cos(2x) exp(-x)",
        f: |x| x.cos() + 2.0 * (2.0 * x).cos() * (-x).exp(),
        df: |x| -x.sin() - (-x).exp() * (4.0 * (2.0 * x).sin() + 2.0 * (2.0 * x).cos()),
        roots: Some(2),
        frl: Some(1.14071),
        extrema: 4,
        trials: [7413, 6, 6],
    },
];

/// Test functions without Lipschitz constants.
pub(super) fn table() -> Vec<Problem> {
    ROWS.iter()
        .enumerate()
        .map(|(i, row)| {
            let mut p = Problem::new(format!("t{:02}", i + 1), row.name, DOMAIN, row.f, row.df)
                .expect("static domain is valid");
            p.kind = ProblemKind::TestFunction;
            p.reference_frl = row.frl;
            p.root_count = row.roots;
            p.reference_extrema = Some(row.extrema);
            p.reference_trials = Some(ReferenceTrials {
                grid: row.trials[0],
                a1: row.trials[1],
                a2: row.trials[2],
            });
            p
        })
        .collect()
}
