//! The four-term Atangana-Baleanu integral identity behind the Bullen-type
//! bounds.
//!
//! For differentiable `f` on `[a, b]`, order `alpha` in (0, 1], and midpoint
//! `m = (a+b)/2`, the combination
//!
//! ```text
//! lhs = C1·[f(a) + f(b) + 2 f(m)] - C2·[T1 + T2 + T3 + T4]
//! ```
//!
//! with
//!
//! ```text
//! C1 = [2 (b-a)^alpha + (1-alpha) 2^(alpha+1) Gamma(alpha)] / (b-a)^(alpha+1)
//! C2 = 2^(alpha+1) B(alpha) Gamma(alpha) / (b-a)^(alpha+1)
//! T1 = AB right integral of f over [a, m], evaluated at a
//! T2 = AB left  integral of f over [a, m], evaluated at m
//! T3 = AB left  integral of f over [m, b], evaluated at b
//! T4 = AB right integral of f over [m, b], evaluated at m
//! ```
//!
//! equals the pair of weighted first-derivative integrals
//!
//! ```text
//! rhs = Int_0^1 ((1-t)^alpha - t^alpha) f'((1+t)/2·a + (1-t)/2·b) dt
//!     + Int_0^1 (t^alpha - (1-t)^alpha) f'((1+t)/2·b + (1-t)/2·a) dt.
//! ```
//!
//! The normalization B(alpha) cancels between C2 and the AB integrals, so
//! both sides are B-independent. At `alpha = 1` the left side collapses to
//! `(8/(b-a))` times the classical Bullen deficit
//! `[f(m) + (f(a)+f(b))/2]/2 - average of f`.

use crate::corpus::RealFunction;
use crate::operators::{
    ab_integral_left, ab_integral_right, FractionalOrder, Normalization, OperatorError,
    OperatorPoint,
};
use crate::quad::{integrate, QuadSpec};
use crate::special::gamma;

/// One instance of the identity: a function, an interval, an order, and the
/// numerical knobs.
#[derive(Clone, Copy)]
pub struct LemmaInstance<'a> {
    pub f: &'a dyn RealFunction,
    pub a: f64,
    pub b: f64,
    pub alpha: FractionalOrder,
    pub norm: Normalization,
    pub quad: QuadSpec,
}

impl<'a> LemmaInstance<'a> {
    pub fn new(
        f: &'a dyn RealFunction,
        a: f64,
        b: f64,
        alpha: f64,
    ) -> Result<Self, OperatorError> {
        if !(a.is_finite() && b.is_finite() && a < b) {
            return Err(OperatorError::BadInterval { a, b });
        }
        Ok(Self {
            f,
            a,
            b,
            alpha: FractionalOrder::new(alpha)?,
            norm: Normalization::default(),
            quad: QuadSpec::default(),
        })
    }
}

/// Both sides of the identity plus absolute and relative residuals;
/// `rel_residual = residual / max(1, |rhs|)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LemmaReport {
    pub lhs: f64,
    pub rhs: f64,
    pub residual: f64,
    pub rel_residual: f64,
}

/// The operator side: triple sum of endpoint/midpoint values minus the four
/// Atangana-Baleanu integrals, with the order-dependent coefficients.
pub fn lemma_lhs(inst: &LemmaInstance) -> Result<f64, OperatorError> {
    let alpha = inst.alpha.value();
    let (a, b) = (inst.a, inst.b);
    let m = 0.5 * (a + b);
    let width = b - a;
    let b_norm = inst.norm.value(alpha);
    let g = gamma(alpha);
    let two_pow = 2.0_f64.powf(alpha + 1.0);
    let c1 = (2.0 * width.powf(alpha) + (1.0 - alpha) * two_pow * g) / width.powf(alpha + 1.0);
    let c2 = two_pow * b_norm * g / width.powf(alpha + 1.0);

    let order = inst.alpha;
    let quad = inst.quad;
    let t1 = ab_integral_right(&OperatorPoint::new(inst.f, a, m, a, order, inst.norm, quad)?)?;
    let t2 = ab_integral_left(&OperatorPoint::new(inst.f, a, m, m, order, inst.norm, quad)?)?;
    let t3 = ab_integral_left(&OperatorPoint::new(inst.f, m, b, b, order, inst.norm, quad)?)?;
    let t4 = ab_integral_right(&OperatorPoint::new(inst.f, m, b, m, order, inst.norm, quad)?)?;

    let values = inst.f.eval(a) + inst.f.eval(b) + 2.0 * inst.f.eval(m);
    Ok(c1 * values - c2 * (t1 + t2 + t3 + t4))
}

/// The derivative side: two weighted integrals of `f'` over the unit
/// parameter interval, one per half of `[a, b]`.
pub fn lemma_rhs(inst: &LemmaInstance) -> Result<f64, OperatorError> {
    let alpha = inst.alpha.value();
    let (a, b) = (inst.a, inst.b);
    let f = inst.f;
    let i1 = integrate(
        |t: f64| {
            ((1.0 - t).powf(alpha) - t.powf(alpha))
                * f.deriv(0.5 * (1.0 + t) * a + 0.5 * (1.0 - t) * b)
        },
        0.0,
        1.0,
        &inst.quad,
    )?;
    let i2 = integrate(
        |t: f64| {
            (t.powf(alpha) - (1.0 - t).powf(alpha))
                * f.deriv(0.5 * (1.0 + t) * b + 0.5 * (1.0 - t) * a)
        },
        0.0,
        1.0,
        &inst.quad,
    )?;
    Ok(i1.value + i2.value)
}

/// Evaluates both sides and packages the residuals.
pub fn verify_lemma(inst: &LemmaInstance) -> Result<LemmaReport, OperatorError> {
    let lhs = lemma_lhs(inst)?;
    let rhs = lemma_rhs(inst)?;
    let residual = (lhs - rhs).abs();
    Ok(LemmaReport { lhs, rhs, residual, rel_residual: residual / rhs.abs().max(1.0) })
}

/// Classical Bullen deficit `[f(m) + (f(a)+f(b))/2]/2 - (1/(b-a)) Int_a^b f`.
/// Nonnegative for convex `f`; `lemma_lhs` at `alpha = 1` equals
/// `8/(b-a)` times this quantity.
pub fn bullen_deficit(
    f: &dyn RealFunction,
    a: f64,
    b: f64,
    quad: &QuadSpec,
) -> Result<f64, OperatorError> {
    if !(a.is_finite() && b.is_finite() && a < b) {
        return Err(OperatorError::BadInterval { a, b });
    }
    let m = 0.5 * (a + b);
    let avg = integrate(|x| f.eval(x), a, b, quad)?.value / (b - a);
    Ok(0.5 * (f.eval(m) + 0.5 * (f.eval(a) + f.eval(b))) - avg)
}
