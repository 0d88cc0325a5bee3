//! `fracineq`: verify Bullen-type inequalities for Atangana-Baleanu
//! fractional operators from the command line.
//!
//! Three subcommands: `verify` runs the identity/bound grid and writes a
//! deterministic JSON or CSV report; `compute` evaluates one operator at a
//! point; `list` prints the registered functions and theorems.
//!
//! Exit codes: 0 on success, 1 when verification finds a violated record or
//! an identity residual at or above the gate, 2 for usage, configuration,
//! or evaluation errors.

mod config;
mod grid;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use fracineq_core::bounds::Theorem;
use fracineq_core::corpus::{lookup, register_builtins, QRange};
use fracineq_core::operators::{
    ab_integral_left, ab_integral_right, abc_derivative, abr_derivative, cf_derivative,
    cf_integral_left, cf_integral_right, rl_integral_left, FractionalOrder, Normalization,
    OperatorPoint,
};
use fracineq_core::quad::QuadSpec;

#[derive(Parser)]
#[command(
    name = "fracineq",
    version,
    about = "Fractional-operator inequality verifier (Atangana-Baleanu / Caputo-Fabrizio)"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the identity and bound verification grid and write a report.
    Verify(VerifyArgs),
    /// Evaluate one fractional operator at a point and print the value.
    Compute(ComputeArgs),
    /// List registered functions (with shape flags) and theorems.
    List,
}

#[derive(Args)]
struct VerifyArgs {
    /// Config file (flat TOML); FRACINEQ_CONFIG names a default.
    #[arg(long, value_name = "PATH")]
    config: Option<PathBuf>,
    /// Restrict the grid to this function (repeatable).
    #[arg(long = "function", value_name = "NAME")]
    functions: Vec<String>,
    /// Comma-separated fractional orders in (0, 1].
    #[arg(long = "alpha", value_name = "LIST", value_delimiter = ',')]
    alphas: Vec<f64>,
    /// Comma-separated conjugate exponent pairs, each written p:q.
    #[arg(long = "pq", value_name = "LIST", value_delimiter = ',', value_parser = parse_pq)]
    pq_pairs: Vec<PqPair>,
    /// Interval written a:b (repeatable).
    #[arg(long = "interval", value_name = "A:B", value_parser = parse_interval)]
    intervals: Vec<Interval>,
    /// Report format.
    #[arg(long, value_enum, value_name = "FORMAT")]
    format: Option<report::ReportFormat>,
    /// Report output path (default fracineq_report.json or .csv).
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Wiring check: zero one bound's right side so the run must fail.
    #[arg(long = "inject-rhs-zero", hide = true)]
    inject_rhs_zero: bool,
}

#[derive(Args)]
struct ComputeArgs {
    /// One of: rl_left, ab_left, ab_right, cf_left, cf_right, abc, abr, cf_deriv.
    operator: String,
    /// A registered function name (see `fracineq list`).
    function: String,
    /// Interval left endpoint.
    a: f64,
    /// Interval right endpoint.
    b: f64,
    /// Evaluation point in [a, b].
    tau: f64,
    /// Fractional order in (0, 1] (derivatives need (0, 1)).
    alpha: f64,
    /// Normalization: unit (B = 1) or ab (B = 1 - a + a/Gamma(a)).
    #[arg(value_parser = ["unit", "ab"])]
    norm: Option<String>,
    /// Same as the NORM positional; the flag wins when both appear.
    #[arg(long = "norm", value_name = "NORM", value_parser = ["unit", "ab"])]
    norm_flag: Option<String>,
}

#[derive(Clone, Copy, Debug)]
struct PqPair(f64, f64);

#[derive(Clone, Copy, Debug)]
struct Interval(f64, f64);

fn parse_pq(s: &str) -> Result<PqPair, String> {
    let (p, q) = s.split_once(':').ok_or_else(|| format!("expected p:q, got `{s}`"))?;
    let p = p.trim().parse::<f64>().map_err(|e| format!("bad p in `{s}`: {e}"))?;
    let q = q.trim().parse::<f64>().map_err(|e| format!("bad q in `{s}`: {e}"))?;
    Ok(PqPair(p, q))
}

fn parse_interval(s: &str) -> Result<Interval, String> {
    let (a, b) = s.split_once(':').ok_or_else(|| format!("expected a:b, got `{s}`"))?;
    let a = a.trim().parse::<f64>().map_err(|e| format!("bad a in `{s}`: {e}"))?;
    let b = b.trim().parse::<f64>().map_err(|e| format!("bad b in `{s}`: {e}"))?;
    Ok(Interval(a, b))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Verify(args) => match cmd_verify(args) {
            Ok(true) => ExitCode::SUCCESS,
            Ok(false) => ExitCode::from(1),
            Err(err) => {
                eprintln!("error: {err:#}");
                ExitCode::from(2)
            }
        },
        Command::Compute(args) => match cmd_compute(&args) {
            Ok(()) => ExitCode::SUCCESS,
            Err(err) => {
                eprintln!("error: {err:#}");
                ExitCode::from(2)
            }
        },
        Command::List => {
            print!("{}", listing());
            ExitCode::SUCCESS
        }
    }
}

/// Runs the grid and writes the report; `Ok(true)` means the run is clean
/// (no violated record, identity residuals under the gate).
fn cmd_verify(args: VerifyArgs) -> Result<bool> {
    let overrides = config::Overrides {
        functions: args.functions,
        intervals: args.intervals.iter().map(|i| (i.0, i.1)).collect(),
        alphas: args.alphas,
        pq_pairs: args.pq_pairs.iter().map(|p| (p.0, p.1)).collect(),
        format: args.format,
        output_path: args.out,
    };
    let cfg = config::load(args.config.as_deref(), overrides)?;
    let outcome = grid::run_grid(&cfg, args.inject_rhs_zero)?;
    if args.inject_rhs_zero && !outcome.injected {
        eprintln!("inject-rhs-zero: no eligible bound record (every |lhs| too small); grid unchanged");
    }

    let text = match cfg.format {
        report::ReportFormat::Json => report::render_json(&cfg, &outcome),
        report::ReportFormat::Csv => report::render_csv(&outcome.records),
    };
    std::fs::write(&cfg.output_path, text)
        .with_context(|| format!("writing report to {}", cfg.output_path.display()))?;

    let s = &outcome.summary;
    println!(
        "wrote {} ({} records in {:.2?})",
        cfg.output_path.display(),
        s.total,
        s.wall_time
    );
    println!(
        "holds {} | violated {} | hypothesis-unmet {}",
        s.holds, s.violated, s.hypothesis_unmet
    );
    match s.min_slack {
        Some(min) => println!(
            "max identity residual {:.3e} (gate {:.0e}); min judged slack {min:.3e}",
            s.max_identity_residual,
            grid::IDENTITY_REL_TOL
        ),
        None => println!(
            "max identity residual {:.3e} (gate {:.0e}); no judged bounds",
            s.max_identity_residual,
            grid::IDENTITY_REL_TOL
        ),
    }
    Ok(s.violated == 0 && s.max_identity_residual < grid::IDENTITY_REL_TOL)
}

fn cmd_compute(args: &ComputeArgs) -> Result<()> {
    let f = lookup(&args.function)?;
    let norm = match args.norm_flag.as_deref().or(args.norm.as_deref()) {
        Some("ab") => Normalization::AbStandard,
        _ => Normalization::Unit,
    };
    let order = FractionalOrder::new(args.alpha)?;
    let pt = OperatorPoint::new(&f, args.a, args.b, args.tau, order, norm, QuadSpec::default())?;
    let value = match args.operator.as_str() {
        "rl_left" => rl_integral_left(&pt)?,
        "ab_left" => ab_integral_left(&pt)?,
        "ab_right" => ab_integral_right(&pt)?,
        "cf_left" => cf_integral_left(&pt)?,
        "cf_right" => cf_integral_right(&pt)?,
        "abc" => abc_derivative(&pt)?,
        "abr" => abr_derivative(&pt)?,
        "cf_deriv" => cf_derivative(&pt)?,
        other => bail!(
            "unknown operator `{other}`; expected one of rl_left, ab_left, ab_right, \
             cf_left, cf_right, abc, abr, cf_deriv"
        ),
    };
    println!("{}", fmt_sig15(value));
    Ok(())
}

/// Plain-decimal rendering at 15 significant digits; zero prints as `0.0`.
fn fmt_sig15(v: f64) -> String {
    if v == 0.0 {
        return "0.0".to_owned();
    }
    if !v.is_finite() {
        return format!("{v}");
    }
    let exponent = v.abs().log10().floor() as i32;
    let decimals = (14 - exponent).clamp(0, 30) as usize;
    format!("{v:.decimals$}")
}

fn listing() -> String {
    let fmt_end = |v: f64| {
        if v == f64::INFINITY {
            "inf".to_owned()
        } else if v == f64::NEG_INFINITY {
            "-inf".to_owned()
        } else {
            format!("{v}")
        }
    };
    let fmt_range = |r: QRange| format!("[{}, {}]", fmt_end(r.lo), fmt_end(r.hi));

    let mut out = String::from("functions:\n");
    for f in register_builtins() {
        let mut notes = Vec::new();
        if f.flags.f_convex {
            notes.push("f convex".to_owned());
        }
        if f.flags.f_concave {
            notes.push("f concave".to_owned());
        }
        if f.flags.abs_fprime_convex {
            notes.push("|f'| convex".to_owned());
        }
        if f.flags.abs_fprime_concave {
            notes.push("|f'| concave".to_owned());
        }
        if let Some(r) = f.q_convex {
            notes.push(format!("|f'|^q convex for q in {}", fmt_range(r)));
        }
        if let Some(r) = f.q_concave {
            notes.push(format!("|f'|^q concave for q in {}", fmt_range(r)));
        }
        out.push_str(&format!(
            "  {:<12} domain [{}, {}]   {}\n",
            f.name,
            fmt_end(f.domain.0),
            fmt_end(f.domain.1),
            notes.join("; ")
        ));
    }
    out.push_str("\ntheorems:\n");
    for t in Theorem::ALL {
        out.push_str(&format!("  {:<16} requires {}\n", t.name(), t.hypothesis()));
    }
    out
}
