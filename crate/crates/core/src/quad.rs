//! Adaptive Gauss-Legendre quadrature with embedded error estimation, plus
//! power substitutions that regularize the weakly singular endpoint kernels
//! `(x-c)^(alpha-1)` and `(d-x)^(alpha-1)` of the fractional integrals.
//!
//! Gauss-Legendre rules are open (no endpoint nodes), so even a caller that
//! skips the substitution never evaluates an integrand at its singular point.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::{Arc, Mutex, OnceLock};

use thiserror::Error;

/// Tolerances and limits for the adaptive engine.
#[derive(Debug, Clone, Copy)]
pub struct QuadSpec {
    /// Relative tolerance on the total integral.
    pub rel_tol: f64,
    /// Absolute tolerance floor (governs integrals near zero).
    pub abs_tol: f64,
    /// Maximum bisection depth for any single panel.
    pub max_depth: u32,
    /// Nodes of the coarse Gauss-Legendre rule; the error estimate compares
    /// against the embedded (2n+1)-node rule.
    pub nodes_per_panel: usize,
}

impl Default for QuadSpec {
    fn default() -> Self {
        Self { rel_tol: 1e-10, abs_tol: 1e-12, max_depth: 40, nodes_per_panel: 15 }
    }
}

/// Endpoint weight attached to an integrand by [`integrate_singular`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SingularKernel {
    /// No weight; plain integration.
    None,
    /// `(x - c)^(alpha - 1)`, singular at the left endpoint.
    LeftPower,
    /// `(d - x)^(alpha - 1)`, singular at the right endpoint.
    RightPower,
}

/// Result of an adaptive integration.
#[derive(Debug, Clone, Copy)]
pub struct Quadrature {
    pub value: f64,
    /// Sum of per-panel embedded error estimates (absolute).
    pub error_estimate: f64,
    pub panels: usize,
    pub evaluations: usize,
}

#[derive(Debug, Error)]
pub enum QuadError {
    #[error("integration bounds must be finite, got [{a}, {b}]")]
    BadInterval { a: f64, b: f64 },
    #[error("invalid quadrature spec: {0}")]
    BadSpec(String),
    #[error("kernel order alpha must lie in (0, 1], got {0}")]
    BadKernelOrder(f64),
    #[error(
        "tolerance not met: error estimate {achieved:.3e} (target {target:.3e}) \
         after {panels} panels at depth limit {depth}"
    )]
    ToleranceNotMet { achieved: f64, target: f64, panels: usize, depth: u32 },
}

/// Neumaier-compensated accumulator shared by the quadrature and special
/// function modules.
#[derive(Debug, Default, Clone, Copy)]
pub(crate) struct CompensatedSum {
    sum: f64,
    compensation: f64,
}

impl CompensatedSum {
    pub(crate) fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.compensation += (self.sum - t) + x;
        } else {
            self.compensation += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub(crate) fn value(&self) -> f64 {
        self.sum + self.compensation
    }
}

struct GaussRule {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussRule {
    /// Nodes and weights on [-1, 1] by Newton iteration on the Legendre
    /// recurrence, seeded with the Tricomi cosine estimate.
    fn compute(n: usize) -> Self {
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let half = n.div_ceil(2);
        for i in 0..half {
            let mut z = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut derivative = 1.0;
            for _ in 0..100 {
                let (p, d) = legendre_with_derivative(n, z);
                derivative = d;
                let dz = p / d;
                z -= dz;
                if dz.abs() <= 1e-15 * z.abs().max(1.0) {
                    // one polishing step past the convergence check
                    let (p2, d2) = legendre_with_derivative(n, z);
                    derivative = d2;
                    z -= p2 / d2;
                    break;
                }
            }
            let w = 2.0 / ((1.0 - z * z) * derivative * derivative);
            nodes[i] = -z;
            nodes[n - 1 - i] = z;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        if n % 2 == 1 {
            nodes[n / 2] = 0.0;
        }
        Self { nodes, weights }
    }
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p_prev = 1.0;
    let mut p = x;
    for k in 2..=n {
        let kf = k as f64;
        let p_next = ((2.0 * kf - 1.0) * x * p - (kf - 1.0) * p_prev) / kf;
        p_prev = p;
        p = p_next;
    }
    let d = n as f64 * (x * p - p_prev) / (x * x - 1.0);
    (p, d)
}

fn gauss_rule(n: usize) -> Arc<GaussRule> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<GaussRule>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut map = cache.lock().expect("gauss rule cache poisoned");
    Arc::clone(map.entry(n).or_insert_with(|| Arc::new(GaussRule::compute(n))))
}

struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
    depth: u32,
}

fn eval_panel<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    depth: u32,
    coarse: &GaussRule,
    fine: &GaussRule,
) -> Panel {
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let apply = |rule: &GaussRule| {
        let mut acc = CompensatedSum::default();
        for (x, w) in rule.nodes.iter().zip(&rule.weights) {
            acc.add(w * f(mid + half * x));
        }
        acc.value() * half
    };
    let coarse_value = apply(coarse);
    let fine_value = apply(fine);
    Panel { a, b, value: fine_value, error: (fine_value - coarse_value).abs(), depth }
}

/// Hard cap on panel count, guarding against integrands that defeat the
/// depth limit by spreading error across many shallow panels.
const MAX_PANELS: usize = 16_384;

fn validate_spec(spec: &QuadSpec) -> Result<(), QuadError> {
    if !(spec.rel_tol > 0.0) || !(spec.abs_tol > 0.0) {
        return Err(QuadError::BadSpec(format!(
            "tolerances must be positive (rel_tol={}, abs_tol={})",
            spec.rel_tol, spec.abs_tol
        )));
    }
    if spec.max_depth < 4 {
        return Err(QuadError::BadSpec(format!("max_depth must be >= 4, got {}", spec.max_depth)));
    }
    if spec.nodes_per_panel < 5 {
        return Err(QuadError::BadSpec(format!(
            "nodes_per_panel must be >= 5, got {}",
            spec.nodes_per_panel
        )));
    }
    Ok(())
}

/// Adaptive integral of `f` over `[a, b]` by worst-panel-first bisection with
/// an embedded n / (2n+1) Gauss-Legendre error estimate. Reversed bounds
/// negate the result.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, spec: &QuadSpec) -> Result<Quadrature, QuadError> {
    validate_spec(spec)?;
    if !a.is_finite() || !b.is_finite() {
        return Err(QuadError::BadInterval { a, b });
    }
    if a == b {
        return Ok(Quadrature { value: 0.0, error_estimate: 0.0, panels: 0, evaluations: 0 });
    }
    if a > b {
        let mut q = integrate(f, b, a, spec)?;
        q.value = -q.value;
        return Ok(q);
    }

    let coarse = gauss_rule(spec.nodes_per_panel);
    let fine = gauss_rule(2 * spec.nodes_per_panel + 1);
    let evals_per_panel = coarse.nodes.len() + fine.nodes.len();

    let mut panels = vec![eval_panel(&f, a, b, 0, &coarse, &fine)];
    let mut evaluations = evals_per_panel;

    loop {
        let mut total = CompensatedSum::default();
        let mut total_error = 0.0;
        let mut worst = 0;
        for (i, p) in panels.iter().enumerate() {
            total.add(p.value);
            total_error += p.error;
            if p.error > panels[worst].error {
                worst = i;
            }
        }
        let value = total.value();
        let target = spec.abs_tol.max(spec.rel_tol * value.abs());
        if total_error <= target {
            return Ok(Quadrature {
                value,
                error_estimate: total_error,
                panels: panels.len(),
                evaluations,
            });
        }
        let depth = panels[worst].depth;
        if depth >= spec.max_depth || panels.len() >= MAX_PANELS {
            return Err(QuadError::ToleranceNotMet {
                achieved: total_error,
                target,
                panels: panels.len(),
                depth,
            });
        }
        let Panel { a: pa, b: pb, .. } = panels[worst];
        let mid = 0.5 * (pa + pb);
        panels[worst] = eval_panel(&f, pa, mid, depth + 1, &coarse, &fine);
        panels.push(eval_panel(&f, mid, pb, depth + 1, &coarse, &fine));
        evaluations += 2 * evals_per_panel;
    }
}

/// Integral of `K(x) g(x)` over `[c, d]` where `K` is the chosen endpoint
/// power kernel of order `alpha`. The substitution `u = (x-c)^alpha`
/// (mirrored for the right kernel) turns the weighted integral into
/// `(1/alpha) Int_0^((d-c)^alpha) g(c + u^(1/alpha)) du`, a bounded
/// integrand, which is handed to [`integrate`].
pub fn integrate_singular<F: Fn(f64) -> f64>(
    g: F,
    c: f64,
    d: f64,
    kernel: SingularKernel,
    alpha: f64,
    spec: &QuadSpec,
) -> Result<Quadrature, QuadError> {
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(QuadError::BadKernelOrder(alpha));
    }
    if kernel == SingularKernel::None || alpha == 1.0 {
        return integrate(g, c, d, spec);
    }
    if !c.is_finite() || !d.is_finite() || c > d {
        // Power kernels are anchored to an endpoint; reversed bounds have no
        // meaning for them.
        return Err(QuadError::BadInterval { a: c, b: d });
    }
    if c == d {
        return Ok(Quadrature { value: 0.0, error_estimate: 0.0, panels: 0, evaluations: 0 });
    }
    let upper = (d - c).powf(alpha);
    let inv_alpha = 1.0 / alpha;
    let mut q = match kernel {
        SingularKernel::LeftPower => integrate(|u: f64| g(c + u.powf(inv_alpha)), 0.0, upper, spec)?,
        SingularKernel::RightPower => integrate(|u: f64| g(d - u.powf(inv_alpha)), 0.0, upper, spec)?,
        SingularKernel::None => unreachable!(),
    };
    q.value /= alpha;
    q.error_estimate /= alpha;
    Ok(q)
}
