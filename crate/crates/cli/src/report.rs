//! Deterministic JSON and CSV rendering of a verification run.
//!
//! Every floating-point value is written as `{:.16e}` (17 significant
//! digits), which round-trips `f64` exactly, and records are emitted in
//! their sorted order, so two runs with the same configuration produce
//! byte-identical files. The report deliberately excludes wall time and the
//! output path itself.

use std::fmt::Write as _;

use fracineq_core::bounds::Theorem;

use crate::config::{norm_name, RunConfig};
use crate::grid::{GridOutcome, Record};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum ReportFormat {
    Json,
    Csv,
}

impl ReportFormat {
    pub fn extension(self) -> &'static str {
        match self {
            ReportFormat::Json => "json",
            ReportFormat::Csv => "csv",
        }
    }
}

pub const CSV_HEADER: &str = "kind,function,a,b,alpha,theorem,p,q,lhs,rhs,slack,residual,status";

/// 17-significant-digit scientific form; the unique shortest such string
/// that parses back to the same `f64`. Non-finite values (which no healthy
/// record contains) degrade to JSON null.
fn fmt_float(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.16e}")
    } else {
        "null".to_owned()
    }
}

fn opt_float(v: Option<f64>) -> String {
    v.map_or_else(|| "null".to_owned(), fmt_float)
}

fn json_str(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            c if (c as u32) < 0x20 => {
                let _ = write!(out, "\\u{:04x}", c as u32);
            }
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

fn json_list<T, F: Fn(&T) -> String>(items: &[T], f: F) -> String {
    let body = items.iter().map(f).collect::<Vec<_>>().join(", ");
    format!("[{body}]")
}

pub fn render_json(cfg: &RunConfig, outcome: &GridOutcome) -> String {
    let mut out = String::new();
    out.push_str("{\n  \"config_echo\": {\n");
    let _ = writeln!(
        out,
        "    \"functions\": {},",
        json_list(&cfg.functions, |f| json_str(&f.name))
    );
    let _ = writeln!(
        out,
        "    \"intervals\": {},",
        json_list(&cfg.intervals, |&(a, b)| format!("[{}, {}]", fmt_float(a), fmt_float(b)))
    );
    let _ = writeln!(out, "    \"alphas\": {},", json_list(&cfg.alphas, |&a| fmt_float(a)));
    let _ = writeln!(
        out,
        "    \"pq_pairs\": {},",
        json_list(&cfg.pq_pairs, |&(p, q)| format!("[{}, {}]", fmt_float(p), fmt_float(q)))
    );
    let _ = writeln!(
        out,
        "    \"theorems\": {},",
        json_list(&cfg.theorems, |t| json_str(t.name()))
    );
    let _ = writeln!(out, "    \"norm\": {},", json_str(norm_name(cfg.norm)));
    let _ = writeln!(
        out,
        "    \"quad\": {{\"rel_tol\": {}, \"abs_tol\": {}, \"max_depth\": {}, \"nodes_per_panel\": {}}}",
        fmt_float(cfg.quad.rel_tol),
        fmt_float(cfg.quad.abs_tol),
        cfg.quad.max_depth,
        cfg.quad.nodes_per_panel
    );
    out.push_str("  },\n");

    let s = &outcome.summary;
    let _ = writeln!(
        out,
        "  \"summary\": {{\"total\": {}, \"holds\": {}, \"violated\": {}, \
         \"hypothesis_unmet\": {}, \"max_identity_residual\": {}, \"min_slack\": {}}},",
        s.total,
        s.holds,
        s.violated,
        s.hypothesis_unmet,
        fmt_float(s.max_identity_residual),
        opt_float(s.min_slack)
    );

    if outcome.records.is_empty() {
        out.push_str("  \"records\": []\n}\n");
        return out;
    }
    out.push_str("  \"records\": [\n");
    for (i, r) in outcome.records.iter().enumerate() {
        out.push_str("    ");
        out.push_str(&record_json(r));
        out.push_str(if i + 1 < outcome.records.len() { ",\n" } else { "\n" });
    }
    out.push_str("  ]\n}\n");
    out
}

fn record_json(r: &Record) -> String {
    let mut fields = Vec::with_capacity(13);
    fields.push(format!("\"kind\": {}", json_str(r.kind.name())));
    fields.push(format!("\"function\": {}", json_str(&r.function)));
    fields.push(format!("\"a\": {}", fmt_float(r.a)));
    fields.push(format!("\"b\": {}", fmt_float(r.b)));
    fields.push(format!("\"alpha\": {}", opt_float(r.alpha)));
    if let Some(t) = r.theorem {
        fields.push(format!("\"theorem\": {}", json_str(t.name())));
    }
    if let Some(p) = r.p {
        fields.push(format!("\"p\": {}", fmt_float(p)));
    }
    if let Some(q) = r.q {
        fields.push(format!("\"q\": {}", fmt_float(q)));
    }
    fields.push(format!("\"lhs\": {}", fmt_float(r.lhs)));
    fields.push(format!("\"rhs\": {}", fmt_float(r.rhs)));
    if let Some(s) = r.slack {
        fields.push(format!("\"slack\": {}", fmt_float(s)));
    }
    if let Some(res) = r.residual {
        fields.push(format!("\"residual\": {}", fmt_float(res)));
    }
    fields.push(format!("\"status\": {}", json_str(r.status)));
    format!("{{{}}}", fields.join(", "))
}

pub fn render_csv(records: &[Record]) -> String {
    let empty = String::new;
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in records {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{},{},{},{}",
            r.kind.name(),
            r.function,
            fmt_float(r.a),
            fmt_float(r.b),
            r.alpha.map_or_else(empty, fmt_float),
            r.theorem.map_or("", Theorem::name),
            r.p.map_or_else(empty, fmt_float),
            r.q.map_or_else(empty, fmt_float),
            fmt_float(r.lhs),
            fmt_float(r.rhs),
            r.slack.map_or_else(empty, fmt_float),
            r.residual.map_or_else(empty, fmt_float),
            r.status
        );
    }
    out
}
