//! The verification grid: one identity record per (function, interval,
//! order), one bound record per applicable theorem instance, and the two
//! classical inequalities once per (function, interval) with no order
//! attached.
//!
//! Records are sorted by (function, interval, alpha, theorem, p) — with
//! missing alpha/p ordered first — so a run is byte-for-byte reproducible.

use std::time::{Duration, Instant};

use anyhow::Result;
use fracineq_core::bounds::{verify_bound, BoundInstance, Theorem, TOL_SLACK};
use fracineq_core::corpus::TestFunction;
use fracineq_core::identity::{verify_lemma, LemmaInstance};
use fracineq_core::operators::FractionalOrder;

use crate::config::RunConfig;

/// Relative-residual gate for identity records; an identity record whose
/// residual reaches this is reported as `Violated` and fails the run.
pub const IDENTITY_REL_TOL: f64 = 1e-7;

/// Bound records whose left side is at least this large are eligible for
/// the `--inject-rhs-zero` wiring check: zeroing their right side is
/// guaranteed to flip the verdict.
const INJECT_MIN_LHS: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RecordKind {
    Identity,
    Bound,
}

impl RecordKind {
    pub fn name(self) -> &'static str {
        match self {
            RecordKind::Identity => "identity",
            RecordKind::Bound => "bound",
        }
    }
}

/// One row of the report. Identity records carry `residual` (relative to
/// `max(1, |rhs|)`); bound records carry `slack` (`rhs - |lhs|`, or the
/// constituent gap for the classical inequalities).
#[derive(Debug, Clone)]
pub struct Record {
    pub kind: RecordKind,
    pub function: String,
    pub a: f64,
    pub b: f64,
    pub alpha: Option<f64>,
    pub theorem: Option<Theorem>,
    pub p: Option<f64>,
    pub q: Option<f64>,
    pub lhs: f64,
    pub rhs: f64,
    pub slack: Option<f64>,
    pub residual: Option<f64>,
    pub status: &'static str,
}

/// Aggregate verdict counts and the two gate quantities. `wall_time` is
/// printed to the console only; it never enters a report file, which must
/// be identical across reruns.
#[derive(Debug, Clone)]
pub struct RunSummary {
    pub total: usize,
    pub holds: usize,
    pub violated: usize,
    pub hypothesis_unmet: usize,
    pub max_identity_residual: f64,
    pub min_slack: Option<f64>,
    pub wall_time: Duration,
}

pub struct GridOutcome {
    pub records: Vec<Record>,
    pub summary: RunSummary,
    /// Whether an `--inject-rhs-zero` perturbation found an eligible record.
    pub injected: bool,
}

/// Runs the whole grid described by `cfg`. Function/interval combinations
/// outside a function's declared domain are skipped. When
/// `inject_rhs_zero` is set, the first eligible bound record (in sorted
/// order) has its right side multiplied by zero and is re-judged, so a
/// healthy corpus yields exactly one `Violated` record — a wiring check for
/// the failure gate.
pub fn run_grid(cfg: &RunConfig, inject_rhs_zero: bool) -> Result<GridOutcome> {
    let start = Instant::now();
    let mut records = Vec::new();
    for f in &cfg.functions {
        for &(a, b) in &cfg.intervals {
            if !(f.domain.0 <= a && b <= f.domain.1) {
                continue;
            }
            for &theorem in &cfg.theorems {
                if !theorem.uses_order() {
                    records.push(bound_record(cfg, f, a, b, None, theorem, None)?);
                }
            }
            for &alpha in &cfg.alphas {
                records.push(identity_record(cfg, f, a, b, alpha)?);
                for &theorem in &cfg.theorems {
                    if !theorem.uses_order() {
                        continue;
                    }
                    if theorem.uses_exponents() {
                        for &pair in &cfg.pq_pairs {
                            records.push(bound_record(
                                cfg,
                                f,
                                a,
                                b,
                                Some(alpha),
                                theorem,
                                Some(pair),
                            )?);
                        }
                    } else {
                        records.push(bound_record(cfg, f, a, b, Some(alpha), theorem, None)?);
                    }
                }
            }
        }
    }
    sort_records(&mut records);
    let injected = inject_rhs_zero && inject(&mut records);
    let summary = summarize(&records, start.elapsed());
    Ok(GridOutcome { records, summary, injected })
}

fn identity_record(
    cfg: &RunConfig,
    f: &TestFunction,
    a: f64,
    b: f64,
    alpha: f64,
) -> Result<Record> {
    let inst = LemmaInstance {
        f,
        a,
        b,
        alpha: FractionalOrder::new(alpha)?,
        norm: cfg.norm,
        quad: cfg.quad,
    };
    let rep = verify_lemma(&inst)?;
    let status = if rep.rel_residual < IDENTITY_REL_TOL { "Holds" } else { "Violated" };
    Ok(Record {
        kind: RecordKind::Identity,
        function: f.name.clone(),
        a,
        b,
        alpha: Some(alpha),
        theorem: None,
        p: None,
        q: None,
        lhs: rep.lhs,
        rhs: rep.rhs,
        slack: None,
        residual: Some(rep.rel_residual),
        status,
    })
}

fn bound_record(
    cfg: &RunConfig,
    f: &TestFunction,
    a: f64,
    b: f64,
    alpha: Option<f64>,
    theorem: Theorem,
    pq: Option<(f64, f64)>,
) -> Result<Record> {
    // The classical inequalities ignore the order; any admissible value
    // satisfies the constructor.
    let mut inst = BoundInstance::new(f, a, b, alpha.unwrap_or(0.5), theorem)?;
    inst.norm = cfg.norm;
    inst.quad = cfg.quad;
    if let Some((p, q)) = pq {
        inst = inst.with_exponents(p, q);
    }
    let rep = verify_bound(&inst)?;
    Ok(Record {
        kind: RecordKind::Bound,
        function: f.name.clone(),
        a,
        b,
        alpha,
        theorem: Some(theorem),
        p: pq.map(|x| x.0),
        q: pq.map(|x| x.1),
        lhs: rep.lhs_abs,
        rhs: rep.rhs,
        slack: Some(rep.slack),
        residual: None,
        status: rep.status.name(),
    })
}

fn sort_records(records: &mut [Record]) {
    records.sort_by(|x, y| {
        let alpha = |r: &Record| r.alpha.unwrap_or(f64::NEG_INFINITY);
        let theorem = |r: &Record| r.theorem.map_or("", Theorem::name);
        let p = |r: &Record| r.p.unwrap_or(f64::NEG_INFINITY);
        x.function
            .cmp(&y.function)
            .then(x.a.total_cmp(&y.a))
            .then(x.b.total_cmp(&y.b))
            .then(alpha(x).total_cmp(&alpha(y)))
            .then(theorem(x).cmp(theorem(y)))
            .then(p(x).total_cmp(&p(y)))
    });
}

fn inject(records: &mut [Record]) -> bool {
    for r in records.iter_mut() {
        if r.kind == RecordKind::Bound && r.status == "Holds" && r.lhs > INJECT_MIN_LHS {
            r.rhs *= 0.0;
            let slack = r.rhs - r.lhs;
            r.slack = Some(slack);
            r.status = if slack >= -TOL_SLACK { "Holds" } else { "Violated" };
            return true;
        }
    }
    false
}

fn summarize(records: &[Record], wall_time: Duration) -> RunSummary {
    let mut summary = RunSummary {
        total: records.len(),
        holds: 0,
        violated: 0,
        hypothesis_unmet: 0,
        max_identity_residual: 0.0,
        min_slack: None,
        wall_time,
    };
    for r in records {
        match r.status {
            "Holds" => summary.holds += 1,
            "Violated" => summary.violated += 1,
            _ => summary.hypothesis_unmet += 1,
        }
        if let Some(res) = r.residual {
            summary.max_identity_residual = summary.max_identity_residual.max(res);
        }
        if r.kind == RecordKind::Bound && r.status != "HypothesisUnmet" {
            if let Some(slack) = r.slack {
                summary.min_slack = Some(summary.min_slack.map_or(slack, |m| m.min(slack)));
            }
        }
    }
    summary
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::{load, Overrides};

    fn small_config(functions: Vec<&str>) -> RunConfig {
        let over = Overrides {
            functions: functions.into_iter().map(str::to_owned).collect(),
            intervals: vec![(0.0, 1.0)],
            alphas: vec![0.5, 1.0],
            pq_pairs: vec![(2.0, 2.0)],
            ..Overrides::default()
        };
        load(None, over).unwrap()
    }

    #[test]
    fn grid_shape_matches_the_combinatorics() {
        let cfg = small_config(vec!["quadratic"]);
        let out = run_grid(&cfg, false).unwrap();
        // Per alpha: 1 identity + 2 order-only theorems + 4 exponent
        // theorems x 1 pair; plus 2 classical records.
        assert_eq!(out.records.len(), 2 * (1 + 2 + 4) + 2);
        assert_eq!(out.summary.total, out.records.len());
        assert_eq!(
            out.summary.total,
            out.summary.holds + out.summary.violated + out.summary.hypothesis_unmet
        );
        assert_eq!(out.summary.violated, 0);
        assert!(out.summary.max_identity_residual < IDENTITY_REL_TOL);
    }

    #[test]
    fn domain_violating_combinations_are_skipped() {
        let over = Overrides {
            functions: vec!["xlogx".to_owned()],
            intervals: vec![(0.0, 1.0), (2.0, 5.0)],
            alphas: vec![0.5],
            pq_pairs: vec![(2.0, 2.0)],
            ..Overrides::default()
        };
        let cfg = load(None, over).unwrap();
        let out = run_grid(&cfg, false).unwrap();
        // xlogx lives on [0.5, inf): only the [2, 5] interval survives.
        assert!(out.records.iter().all(|r| r.a == 2.0 && r.b == 5.0));
    }

    #[test]
    fn records_are_sorted_and_injection_flips_exactly_one() {
        let cfg = small_config(vec!["exp", "quadratic"]);
        let clean = run_grid(&cfg, false).unwrap();
        let keys: Vec<_> = clean
            .records
            .iter()
            .map(|r| {
                (
                    r.function.clone(),
                    r.alpha.unwrap_or(f64::NEG_INFINITY).to_bits() as i64,
                    r.theorem.map_or("", Theorem::name),
                )
            })
            .collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);

        let poked = run_grid(&cfg, true).unwrap();
        assert!(poked.injected);
        assert_eq!(poked.summary.violated, 1);
        assert_eq!(poked.summary.total, clean.summary.total);
        let bad: Vec<_> =
            poked.records.iter().filter(|r| r.status == "Violated").collect();
        assert_eq!(bad.len(), 1);
        assert_eq!(bad[0].rhs, 0.0);
        assert!(bad[0].slack.unwrap() < -TOL_SLACK);
    }

    #[test]
    fn hypothesis_gaps_are_reported_not_judged() {
        // sine is concave with concave |f'|: the convexity-gated theorems
        // must come back HypothesisUnmet but still carry both sides.
        let over = Overrides {
            functions: vec!["sine".to_owned()],
            intervals: vec![(0.0, 1.0)],
            alphas: vec![0.5],
            pq_pairs: vec![(2.0, 2.0)],
            ..Overrides::default()
        };
        let cfg = load(None, over).unwrap();
        let out = run_grid(&cfg, false).unwrap();
        let unmet: Vec<_> =
            out.records.iter().filter(|r| r.status == "HypothesisUnmet").collect();
        assert!(!unmet.is_empty());
        assert!(unmet.iter().all(|r| r.rhs.is_finite() && r.slack.is_some()));
        assert_eq!(out.summary.hypothesis_unmet, unmet.len());
    }
}
