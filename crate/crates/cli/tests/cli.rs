use std::fs;
use std::process::{Command, Output};

fn firstroot(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_firstroot"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn field(text: &str, key: &str) -> String {
    text.lines()
        .find_map(|l| l.strip_prefix(&format!("{key}: ")))
        .unwrap_or_else(|| panic!("missing `{key}` in:\n{text}"))
        .to_string()
}

#[test]
fn list_prints_every_problem() {
    let out = firstroot(&["list"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 22);
    let t10 = lines.iter().find(|l| l.starts_with("t10\t")).unwrap();
    assert!(t10.contains("roots=34"), "{t10}");
    let t08 = lines.iter().find(|l| l.starts_with("t08\t")).unwrap();
    assert!(t08.contains("frl=-"), "{t08}");
}

#[test]
fn solve_finds_first_root_of_t01() {
    let out = firstroot(&["solve", "--problem", "t01", "--method", "a2"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert_eq!(field(&text, "outcome"), "first_root_found");
    let x: f64 = field(&text, "x").parse().unwrap();
    assert!((x - 3.0117).abs() < 1e-3, "x = {x}");
}

#[test]
fn a1_without_constant_uses_oracle() {
    let out = firstroot(&["solve", "--problem", "t01", "--method", "a1"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("note: using oracle Lipschitz constant K = "));
}

#[test]
fn usage_errors_exit_one() {
    let bad_pair = firstroot(&["solve", "--problem", "t01", "--method", "a2", "--lipschitz", "3"]);
    assert_eq!(bad_pair.status.code(), Some(1));
    let unknown = firstroot(&["solve", "--problem", "t99"]);
    assert_eq!(unknown.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&unknown.stderr).contains("t99"));
    let bad_flag = firstroot(&["solve", "--bogus"]);
    assert_eq!(bad_flag.status.code(), Some(1));
    let help = firstroot(&["--help"]);
    assert_eq!(help.status.code(), Some(0));
}

#[test]
fn trace_has_one_line_per_trial() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("trace.jsonl");
    let out = firstroot(&["solve", "--problem", "t03", "--trace", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let trials: usize = field(&stdout(&out), "trials").parse().unwrap();
    let trace = fs::read_to_string(&path).unwrap();
    assert_eq!(trace.lines().count(), trials);
    for line in trace.lines() {
        assert!(line.starts_with('{') && line.contains("\"b_n\""), "{line}");
    }
}

#[test]
fn budget_exit_code() {
    let out = firstroot(&["solve", "--problem", "t10", "--max-trials", "4"]);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(field(&stdout(&out), "outcome"), "budget_exhausted");
}

#[test]
fn sample_endpoints() {
    let out = firstroot(&["sample", "--problem", "t01", "--points", "2"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 3);
    assert_eq!(lines[0], "x,f,df");
    assert!(lines[1].starts_with("0.2,"));
    assert!(lines[2].starts_with("7,"));
    assert_eq!(firstroot(&["sample", "--problem", "t01", "--points", "1"]).status.code(), Some(1));
}

#[test]
fn sample_grid_is_increasing_and_shows_cutoff() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cheb.csv");
    let out = firstroot(&["sample", "--problem", "chebyshev", "--output", path.to_str().unwrap()]);
    assert!(out.status.success());
    let text = fs::read_to_string(&path).unwrap();
    let rows: Vec<(f64, f64)> = text
        .lines()
        .skip(1)
        .map(|l| {
            let mut it = l.split(',').map(|v| v.parse::<f64>().unwrap());
            (it.next().unwrap(), it.next().unwrap())
        })
        .collect();
    assert_eq!(rows.len(), 1001);
    assert!(rows.windows(2).all(|w| w[0].0 < w[1].0));
    assert_eq!(rows.last().unwrap().0, 2.0);
    let changes = rows
        .windows(2)
        .filter(|w| w[1].0 < 0.9 && (w[0].1 > 0.0) != (w[1].1 > 0.0))
        .count();
    assert_eq!(changes, 1);
}

#[test]
fn bench_from_config_with_overrides() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("bench.conf");
    let report = dir.path().join("report.csv");
    fs::write(
        &config,
        format!(
            "# small run\nproblem_ids = t01,t02\nmethods = a2\nsigma_fraction = 1e-4\noutput_path = {}\n",
            report.display()
        ),
    )
    .unwrap();
    let out = firstroot(&["bench", "--config", config.to_str().unwrap(), "--methods", "a1,a2"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(stdout(&out).starts_with("wrote 4 rows to "));
    let csv = fs::read_to_string(&report).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "problem,method,trials,outcome,x,f,ref_frl,abs_err");
    assert_eq!(lines.len(), 6);
    assert!(lines[5].starts_with("Average,"));

    let md = firstroot(&["bench", "--problems", "t01", "--methods", "grid", "--format", "markdown"]);
    assert!(md.status.success());
    assert!(stdout(&md).starts_with('|'));
}

#[test]
fn bench_rejects_unknown_config_key() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("bad.conf");
    fs::write(&config, "colour = blue\n").unwrap();
    let out = firstroot(&["bench", "--config", config.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
}
