//! End-to-end checks of the `fracineq` binary: the default verification run
//! must be clean and deterministic, the injected-failure hook must trip the
//! exit gate, compute must print reference values digit-for-digit, and
//! config errors must name the offending field.

use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

const CONFIG_ENV: &str = "FRACINEQ_CONFIG";

fn bin() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_fracineq"));
    // Isolate from any config the invoking shell might point at.
    cmd.env_remove(CONFIG_ENV);
    cmd
}

fn run(args: &[&str], dir: &Path) -> Output {
    let mut cmd = bin();
    cmd.args(args).current_dir(dir);
    cmd.output().expect("binary should spawn")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn parse_report(path: &Path) -> Value {
    let text = std::fs::read_to_string(path).expect("report file should exist");
    serde_json::from_str(&text).expect("report should be valid JSON")
}

#[test]
fn criterion8_default_verify_is_clean_and_deterministic() {
    let dir = TempDir::new().unwrap();
    let first = run(&["verify", "--out", "a.json"], dir.path());
    let second = run(&["verify", "--out", "b.json"], dir.path());
    assert_eq!(first.status.code(), Some(0), "stderr: {}", stderr(&first));
    assert_eq!(second.status.code(), Some(0));

    let a = std::fs::read(dir.path().join("a.json")).unwrap();
    let b = std::fs::read(dir.path().join("b.json")).unwrap();
    assert_eq!(a, b, "reruns with identical config must be byte-identical");

    let report = parse_report(&dir.path().join("a.json"));
    for key in ["config_echo", "summary", "records"] {
        assert!(report.get(key).is_some(), "top-level key {key} missing");
    }
    let summary = &report["summary"];
    assert_eq!(summary["violated"], 0);
    assert_eq!(summary["total"], 1748);
    assert_eq!(summary["hypothesis_unmet"], 506);
    assert_eq!(
        summary["total"].as_u64().unwrap(),
        summary["holds"].as_u64().unwrap()
            + summary["violated"].as_u64().unwrap()
            + summary["hypothesis_unmet"].as_u64().unwrap()
    );
    assert!(summary["max_identity_residual"].as_f64().unwrap() < 1e-7);
    assert!(summary["min_slack"].as_f64().unwrap() >= -1e-9);

    let records = report["records"].as_array().unwrap();
    assert_eq!(records.len(), 1748);
    for key in ["kind", "function", "a", "b", "alpha", "lhs", "rhs", "status"] {
        assert!(records[0].get(key).is_some(), "record key {key} missing");
    }
    // The classical inequalities are order-free and carry a null alpha.
    assert!(records.iter().any(|r| r["alpha"].is_null()));

    // No --out: the default path lands in the working directory.
    let defaulted = run(&["verify"], dir.path());
    assert_eq!(defaulted.status.code(), Some(0));
    assert!(dir.path().join("fracineq_report.json").exists());
    println!("PASS criterion 8: default verify exits 0 with a deterministic 1748-record report");
}

#[test]
fn criterion8_injected_rhs_zero_trips_the_gate() {
    let dir = TempDir::new().unwrap();
    let out = run(&["verify", "--inject-rhs-zero", "--out", "poked.json"], dir.path());
    assert_eq!(out.status.code(), Some(1), "a zeroed RHS must fail the run");

    let report = parse_report(&dir.path().join("poked.json"));
    assert_eq!(report["summary"]["violated"], 1);
    let bad: Vec<&Value> = report["records"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|r| r["status"] == "Violated")
        .collect();
    assert_eq!(bad.len(), 1);
    assert_eq!(bad[0]["rhs"].as_f64().unwrap(), 0.0);
    assert!(bad[0]["slack"].as_f64().unwrap() < 0.0);
    println!("PASS criterion 8: zeroing one bound RHS flips the exit status to 1");
}

#[test]
fn compute_prints_reference_values_exactly() {
    let dir = TempDir::new().unwrap();
    let cases = [
        (vec!["compute", "rl_left", "linear", "0", "1", "1", "0.5", "unit"], "0.752252778063675"),
        (vec!["compute", "ab_left", "quadratic", "0", "1", "1", "1.0", "unit"], "0.333333333333333"),
        (vec!["compute", "abc", "constant", "0", "1", "0.5", "0.5", "--norm", "unit"], "0.0"),
        (vec!["compute", "cf_left", "linear", "0", "1", "1", "0.25"], "0.875000000000000"),
    ];
    for (args, expected) in cases {
        let out = run(&args, dir.path());
        assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
        assert_eq!(stdout(&out).trim(), expected, "args: {args:?}");
    }
}

#[test]
fn compute_surfaces_domain_and_vocabulary_errors() {
    let dir = TempDir::new().unwrap();

    let unknown = run(&["compute", "rl_right", "linear", "0", "1", "1", "0.5"], dir.path());
    assert_eq!(unknown.status.code(), Some(2));
    assert!(stderr(&unknown).contains("unknown operator"));

    // The ABR stencil needs room on both sides of tau.
    let stencil = run(&["compute", "abr", "linear", "0", "1", "0", "0.5"], dir.path());
    assert_eq!(stencil.status.code(), Some(2));
    assert!(stderr(&stencil).contains("stencil"), "stderr: {}", stderr(&stencil));

    let badfn = run(&["compute", "rl_left", "cubic", "0", "1", "1", "0.5"], dir.path());
    assert_eq!(badfn.status.code(), Some(2));
    assert!(stderr(&badfn).contains("cubic"));
}

#[test]
fn list_inventories_functions_and_theorems() {
    let dir = TempDir::new().unwrap();
    let out = run(&["list"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("quadratic"));
    assert!(text.contains("sqrt_family"));
    assert!(text.contains("|f'|^q concave for q in [1, 2]"));
    for name in [
        "ConvexAbs",
        "Holder",
        "PowerMean",
        "Young",
        "ConcaveJensen",
        "ConcaveHolder",
        "HermiteHadamard",
        "Bullen",
    ] {
        let hits = text.lines().filter(|l| l.split_whitespace().next() == Some(name)).count();
        assert_eq!(hits, 1, "{name} should appear exactly once");
    }
}

#[test]
fn invalid_config_exits_2_and_names_the_field() {
    let dir = TempDir::new().unwrap();
    std::fs::write(dir.path().join("bad.toml"), "alphas = [0.5, 1.2]\n").unwrap();
    let out = run(&["verify", "--config", "bad.toml", "--out", "x.json"], dir.path());
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("alphas"), "stderr: {}", stderr(&out));
    assert!(!dir.path().join("x.json").exists(), "no report on config error");
}

#[test]
fn linear_run_via_env_config_has_full_slack_and_tiny_residuals() {
    let dir = TempDir::new().unwrap();
    let config = dir.path().join("linear.toml");
    std::fs::write(
        &config,
        "functions = [\"linear\"]\n\
         theorems = [\"ConvexAbs\", \"Holder\", \"PowerMean\", \"Young\", \
         \"ConcaveJensen\", \"ConcaveHolder\"]\n",
    )
    .unwrap();
    let mut cmd = bin();
    cmd.args(["verify", "--out", "lin.json"]).current_dir(dir.path()).env(CONFIG_ENV, &config);
    let out = cmd.output().unwrap();
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));

    let report = parse_report(&dir.path().join("lin.json"));
    let records = report["records"].as_array().unwrap();
    assert!(!records.is_empty());
    for r in records {
        assert_eq!(r["function"], "linear");
        match r["kind"].as_str().unwrap() {
            // The identity left side vanishes for affine functions, so every
            // bound's slack is its whole right side.
            "bound" => {
                let rhs = r["rhs"].as_f64().unwrap();
                let slack = r["slack"].as_f64().unwrap();
                assert!((slack - rhs).abs() <= 1e-9 * rhs.abs().max(1.0), "record {r}");
            }
            _ => {
                assert!(r["residual"].as_f64().unwrap() < 1e-9, "record {r}");
            }
        }
    }
}

#[test]
fn flags_override_the_config_file() {
    let dir = TempDir::new().unwrap();
    std::fs::write(dir.path().join("cfg.toml"), "functions = [\"linear\"]\nalphas = [0.5]\n")
        .unwrap();
    let out = run(
        &["verify", "--config", "cfg.toml", "--function", "exp", "--out", "o.json"],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    let report = parse_report(&dir.path().join("o.json"));
    let records = report["records"].as_array().unwrap();
    assert!(!records.is_empty());
    assert!(records.iter().all(|r| r["function"] == "exp"));
    // The file's alpha restriction still applies underneath the flag.
    assert!(records
        .iter()
        .all(|r| r["alpha"].is_null() || r["alpha"].as_f64() == Some(0.5)));
}

#[test]
fn csv_report_is_rectangular_with_the_documented_header() {
    let dir = TempDir::new().unwrap();
    let out = run(
        &["verify", "--function", "quadratic", "--format", "csv", "--out", "r.csv"],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(dir.path().join("r.csv")).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "kind,function,a,b,alpha,theorem,p,q,lhs,rhs,slack,residual,status"
    );
    let mut rows = 0;
    for row in lines {
        assert_eq!(row.split(',').count(), 13, "row: {row}");
        rows += 1;
    }
    // 3 intervals x (2 classical + 6 alphas x (1 identity + 2 order-only
    // theorems + 4 exponent theorems x 3 pairs)).
    assert_eq!(rows, 3 * (2 + 6 * 15));
}
