//! Run configuration for `fracineq verify`: defaults, TOML file loading,
//! command-line overrides, and validation with field-named error messages.
//!
//! Precedence is flags over file over defaults. The file is flat TOML; the
//! path comes from `--config` or, failing that, the `FRACINEQ_CONFIG`
//! environment variable. Every list is sorted and deduplicated after
//! validation so the grid iterates in a canonical order regardless of how
//! the configuration was spelled.

use std::env;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use fracineq_core::bounds::Theorem;
use fracineq_core::corpus::{lookup, register_builtins, TestFunction};
use fracineq_core::operators::Normalization;
use fracineq_core::quad::QuadSpec;
use serde::Deserialize;

use crate::report::ReportFormat;

/// Environment variable naming a default config file, consulted when
/// `--config` is absent.
pub const CONFIG_ENV: &str = "FRACINEQ_CONFIG";

/// Grid defaults: the three reference intervals, six orders (including the
/// classical endpoint), and three conjugate exponent pairs.
pub const DEFAULT_INTERVALS: [(f64, f64); 3] = [(0.0, 1.0), (-1.0, 2.0), (2.0, 5.0)];
pub const DEFAULT_ALPHAS: [f64; 6] = [0.1, 0.25, 0.5, 0.75, 0.9, 1.0];
pub const DEFAULT_PQ_PAIRS: [(f64, f64); 3] = [(2.0, 2.0), (3.0, 1.5), (1.5, 3.0)];

/// Raw file shape: every key optional, flat TOML. Unknown keys are rejected
/// so typos surface instead of silently reverting to defaults.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    functions: Option<Vec<String>>,
    intervals: Option<Vec<[f64; 2]>>,
    alphas: Option<Vec<f64>>,
    pq_pairs: Option<Vec<[f64; 2]>>,
    theorems: Option<Vec<String>>,
    norm: Option<String>,
    format: Option<String>,
    output_path: Option<PathBuf>,
    rel_tol: Option<f64>,
    abs_tol: Option<f64>,
    max_depth: Option<u32>,
    nodes_per_panel: Option<usize>,
}

/// Values taken from command-line flags; any non-empty field wins over the
/// corresponding file key.
#[derive(Debug, Default)]
pub struct Overrides {
    pub functions: Vec<String>,
    pub intervals: Vec<(f64, f64)>,
    pub alphas: Vec<f64>,
    pub pq_pairs: Vec<(f64, f64)>,
    pub format: Option<ReportFormat>,
    pub output_path: Option<PathBuf>,
}

/// A fully resolved and validated verification run.
#[derive(Clone)]
pub struct RunConfig {
    pub functions: Vec<TestFunction>,
    pub intervals: Vec<(f64, f64)>,
    pub alphas: Vec<f64>,
    pub pq_pairs: Vec<(f64, f64)>,
    pub theorems: Vec<Theorem>,
    pub norm: Normalization,
    pub quad: QuadSpec,
    pub format: ReportFormat,
    pub output_path: PathBuf,
}

impl std::fmt::Debug for RunConfig {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("RunConfig")
            .field("functions", &self.functions.iter().map(|x| x.name.as_str()).collect::<Vec<_>>())
            .field("intervals", &self.intervals)
            .field("alphas", &self.alphas)
            .field("pq_pairs", &self.pq_pairs)
            .field("theorems", &self.theorems)
            .field("norm", &self.norm)
            .field("quad", &self.quad)
            .field("format", &self.format)
            .field("output_path", &self.output_path)
            .finish()
    }
}

/// The CLI spelling of a normalization choice.
pub fn norm_name(norm: Normalization) -> &'static str {
    match norm {
        Normalization::Unit => "unit",
        Normalization::AbStandard => "ab",
    }
}

/// Loads the config file (if any), applies overrides, validates, resolves.
pub fn load(config_flag: Option<&Path>, overrides: Overrides) -> Result<RunConfig> {
    let file = match config_path(config_flag) {
        Some(path) => {
            let text = std::fs::read_to_string(&path)
                .with_context(|| format!("reading config file {}", path.display()))?;
            toml::from_str(&text)
                .with_context(|| format!("parsing config file {}", path.display()))?
        }
        None => FileConfig::default(),
    };
    resolve(file, overrides)
}

fn config_path(flag: Option<&Path>) -> Option<PathBuf> {
    if let Some(path) = flag {
        return Some(path.to_owned());
    }
    match env::var_os(CONFIG_ENV) {
        Some(v) if !v.is_empty() => Some(PathBuf::from(v)),
        _ => None,
    }
}

fn resolve(file: FileConfig, over: Overrides) -> Result<RunConfig> {
    let quad = resolve_quad(&file)?;
    let functions = resolve_functions(over.functions, file.functions)?;
    let intervals = resolve_intervals(over.intervals, file.intervals)?;
    let alphas = resolve_alphas(over.alphas, file.alphas)?;
    let pq_pairs = resolve_pq_pairs(over.pq_pairs, file.pq_pairs)?;
    let theorems = resolve_theorems(file.theorems)?;

    let norm = match file.norm.as_deref() {
        None | Some("unit") => Normalization::Unit,
        Some("ab") => Normalization::AbStandard,
        Some(other) => {
            bail!("config field `norm`: unknown value `{other}` (expected `unit` or `ab`)")
        }
    };

    let format = match over.format {
        Some(f) => f,
        None => match file.format.as_deref() {
            None | Some("json") => ReportFormat::Json,
            Some("csv") => ReportFormat::Csv,
            Some(other) => {
                bail!("config field `format`: unknown value `{other}` (expected `json` or `csv`)")
            }
        },
    };

    let output_path = over
        .output_path
        .or(file.output_path)
        .unwrap_or_else(|| PathBuf::from(format!("fracineq_report.{}", format.extension())));

    Ok(RunConfig {
        functions,
        intervals,
        alphas,
        pq_pairs,
        theorems,
        norm,
        quad,
        format,
        output_path,
    })
}

fn resolve_functions(
    over: Vec<String>,
    file: Option<Vec<String>>,
) -> Result<Vec<TestFunction>> {
    let mut names = if !over.is_empty() {
        over
    } else if let Some(v) = file {
        v
    } else {
        register_builtins().into_iter().map(|f| f.name).collect()
    };
    if names.is_empty() {
        bail!("config field `functions`: must not be empty");
    }
    names.sort();
    names.dedup();
    names
        .iter()
        .map(|n| lookup(n).context("config field `functions`"))
        .collect()
}

fn resolve_intervals(
    over: Vec<(f64, f64)>,
    file: Option<Vec<[f64; 2]>>,
) -> Result<Vec<(f64, f64)>> {
    let mut intervals = if !over.is_empty() {
        over
    } else if let Some(v) = file {
        v.into_iter().map(|[a, b]| (a, b)).collect()
    } else {
        DEFAULT_INTERVALS.to_vec()
    };
    if intervals.is_empty() {
        bail!("config field `intervals`: must not be empty");
    }
    for &(a, b) in &intervals {
        if !(a.is_finite() && b.is_finite() && a < b) {
            bail!("config field `intervals`: [{a}, {b}] is not a finite interval with a < b");
        }
    }
    intervals.sort_by(|x, y| x.0.total_cmp(&y.0).then(x.1.total_cmp(&y.1)));
    intervals.dedup();
    Ok(intervals)
}

fn resolve_alphas(over: Vec<f64>, file: Option<Vec<f64>>) -> Result<Vec<f64>> {
    let mut alphas = if !over.is_empty() {
        over
    } else {
        file.unwrap_or_else(|| DEFAULT_ALPHAS.to_vec())
    };
    if alphas.is_empty() {
        bail!("config field `alphas`: must not be empty");
    }
    for &a in &alphas {
        if !(a.is_finite() && 0.0 < a && a <= 1.0) {
            bail!("config field `alphas`: {a} is outside the admissible range (0, 1]");
        }
    }
    alphas.sort_by(f64::total_cmp);
    alphas.dedup();
    Ok(alphas)
}

fn resolve_pq_pairs(
    over: Vec<(f64, f64)>,
    file: Option<Vec<[f64; 2]>>,
) -> Result<Vec<(f64, f64)>> {
    let mut pairs = if !over.is_empty() {
        over
    } else if let Some(v) = file {
        v.into_iter().map(|[p, q]| (p, q)).collect()
    } else {
        DEFAULT_PQ_PAIRS.to_vec()
    };
    if pairs.is_empty() {
        bail!("config field `pq_pairs`: must not be empty");
    }
    for &(p, q) in &pairs {
        let conjugate =
            p.is_finite() && q.is_finite() && p > 1.0 && q > 1.0 && (1.0 / p + 1.0 / q - 1.0).abs() <= 1e-12;
        if !conjugate {
            bail!(
                "config field `pq_pairs`: ({p}, {q}) is not a conjugate pair \
                 (need p, q > 1 with 1/p + 1/q = 1)"
            );
        }
    }
    pairs.sort_by(|x, y| x.0.total_cmp(&y.0).then(x.1.total_cmp(&y.1)));
    pairs.dedup();
    Ok(pairs)
}

fn resolve_theorems(file: Option<Vec<String>>) -> Result<Vec<Theorem>> {
    let Some(names) = file else {
        return Ok(Theorem::ALL.to_vec());
    };
    if names.is_empty() {
        bail!("config field `theorems`: must not be empty");
    }
    let mut picked = Vec::new();
    for name in &names {
        let theorem: Theorem =
            name.parse().map_err(|e| anyhow::anyhow!("config field `theorems`: {e}"))?;
        picked.push(theorem);
    }
    // Canonical declaration order, duplicates collapsed.
    Ok(Theorem::ALL.into_iter().filter(|t| picked.contains(t)).collect())
}

fn resolve_quad(file: &FileConfig) -> Result<QuadSpec> {
    let mut quad = QuadSpec::default();
    if let Some(v) = file.rel_tol {
        if !(v.is_finite() && v > 0.0) {
            bail!("config field `rel_tol`: {v} must be a positive finite real");
        }
        quad.rel_tol = v;
    }
    if let Some(v) = file.abs_tol {
        if !(v.is_finite() && v > 0.0) {
            bail!("config field `abs_tol`: {v} must be a positive finite real");
        }
        quad.abs_tol = v;
    }
    if let Some(v) = file.max_depth {
        if v < 4 {
            bail!("config field `max_depth`: {v} must be at least 4");
        }
        quad.max_depth = v;
    }
    if let Some(v) = file.nodes_per_panel {
        if v < 5 {
            bail!("config field `nodes_per_panel`: {v} must be at least 5");
        }
        quad.nodes_per_panel = v;
    }
    Ok(quad)
}
