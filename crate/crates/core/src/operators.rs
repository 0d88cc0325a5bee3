//! Fractional operators on a real interval: the Riemann-Liouville integral
//! building block, Atangana-Baleanu integrals and derivatives (Caputo and
//! Riemann senses, Mittag-Leffler kernel), and the Caputo-Fabrizio family
//! (exponential kernel).
//!
//! Left operators act on `[a, tau]`, right operators on `[tau, b]`. All
//! weakly singular kernels go through [`integrate_singular`]'s power
//! substitution; the derivative kernels are bounded and use plain adaptive
//! integration.

use std::cell::RefCell;

use thiserror::Error;

use crate::corpus::RealFunction;
use crate::quad::{integrate, integrate_singular, QuadError, QuadSpec, SingularKernel};
use crate::special::{gamma, mittag_leffler, SpecialError};

/// Fractional order alpha, validated to (0, 1] on construction. The
/// derivative operators additionally reject alpha = 1 (their 1/(1-alpha)
/// prefactor is undefined there).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FractionalOrder(f64);

impl FractionalOrder {
    pub fn new(alpha: f64) -> Result<Self, OperatorError> {
        if alpha.is_finite() && alpha > 0.0 && alpha <= 1.0 {
            Ok(Self(alpha))
        } else {
            Err(OperatorError::OrderOutOfRange(alpha))
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

/// The normalization function B(alpha) shared by the AB and CF definitions
/// (the literature's M(alpha) for CF operators is the same object here).
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum Normalization {
    /// B(alpha) = 1. All verified identities are B-independent, so this is
    /// the default.
    #[default]
    Unit,
    /// B(alpha) = 1 - alpha + alpha/Gamma(alpha); satisfies B(0) = B(1) = 1.
    AbStandard,
}

impl Normalization {
    pub fn value(self, alpha: f64) -> f64 {
        match self {
            Normalization::Unit => 1.0,
            Normalization::AbStandard => 1.0 - alpha + alpha / gamma(alpha),
        }
    }
}

/// Everything needed to evaluate one operator: the function, the base
/// interval `[a, b]`, the evaluation point `tau` inside it, the order, the
/// normalization, and the quadrature tolerances.
#[derive(Clone, Copy)]
pub struct OperatorPoint<'a> {
    pub f: &'a dyn RealFunction,
    pub a: f64,
    pub b: f64,
    pub tau: f64,
    pub order: FractionalOrder,
    pub norm: Normalization,
    pub quad: QuadSpec,
}

impl<'a> OperatorPoint<'a> {
    pub fn new(
        f: &'a dyn RealFunction,
        a: f64,
        b: f64,
        tau: f64,
        order: FractionalOrder,
        norm: Normalization,
        quad: QuadSpec,
    ) -> Result<Self, OperatorError> {
        if !(a.is_finite() && b.is_finite() && a < b) {
            return Err(OperatorError::BadInterval { a, b });
        }
        if !(tau >= a && tau <= b) {
            return Err(OperatorError::PointOutsideInterval { tau, a, b });
        }
        Ok(Self { f, a, b, tau, order, norm, quad })
    }

    /// Unit normalization and default quadrature tolerances.
    pub fn with_defaults(
        f: &'a dyn RealFunction,
        a: f64,
        b: f64,
        tau: f64,
        alpha: f64,
    ) -> Result<Self, OperatorError> {
        Self::new(f, a, b, tau, FractionalOrder::new(alpha)?, Normalization::Unit, QuadSpec::default())
    }
}

#[derive(Debug, Error)]
pub enum OperatorError {
    #[error("fractional order must lie in (0, 1], got {0}")]
    OrderOutOfRange(f64),
    #[error("derivative operators require order strictly below one, got {0}")]
    DerivativeOrderNotBelowOne(f64),
    #[error("interval is empty or unordered: [{a}, {b}]")]
    BadInterval { a: f64, b: f64 },
    #[error("evaluation point tau={tau} lies outside [{a}, {b}]")]
    PointOutsideInterval { tau: f64, a: f64, b: f64 },
    #[error(
        "the abr difference stencil needs tau at least {needed:.1e} away from both \
         ends of [{a}, {b}], got tau={tau}"
    )]
    StencilOutsideInterval { tau: f64, a: f64, b: f64, needed: f64 },
    #[error(transparent)]
    Quadrature(#[from] QuadError),
    #[error(transparent)]
    Special(#[from] SpecialError),
}

fn derivative_order(pt: &OperatorPoint) -> Result<f64, OperatorError> {
    let alpha = pt.order.value();
    if alpha >= 1.0 {
        Err(OperatorError::DerivativeOrderNotBelowOne(alpha))
    } else {
        Ok(alpha)
    }
}

/// Riemann-Liouville left integral
/// `(1/Gamma(alpha)) Int_a^tau f(y) (tau - y)^(alpha-1) dy`.
pub fn rl_integral_left(pt: &OperatorPoint) -> Result<f64, OperatorError> {
    let alpha = pt.order.value();
    let q = integrate_singular(
        |y| pt.f.eval(y),
        pt.a,
        pt.tau,
        SingularKernel::RightPower,
        alpha,
        &pt.quad,
    )?;
    Ok(q.value / gamma(alpha))
}

/// Riemann-Liouville right integral
/// `(1/Gamma(alpha)) Int_tau^b f(y) (y - tau)^(alpha-1) dy`.
pub fn rl_integral_right(pt: &OperatorPoint) -> Result<f64, OperatorError> {
    let alpha = pt.order.value();
    let q = integrate_singular(
        |y| pt.f.eval(y),
        pt.tau,
        pt.b,
        SingularKernel::LeftPower,
        alpha,
        &pt.quad,
    )?;
    Ok(q.value / gamma(alpha))
}

/// Atangana-Baleanu left integral:
/// `(1-alpha)/B(alpha) · f(tau) + alpha/B(alpha) · RL_left`.
pub fn ab_integral_left(pt: &OperatorPoint) -> Result<f64, OperatorError> {
    let alpha = pt.order.value();
    let b_norm = pt.norm.value(alpha);
    Ok((1.0 - alpha) / b_norm * pt.f.eval(pt.tau) + alpha / b_norm * rl_integral_left(pt)?)
}

/// Atangana-Baleanu right integral, the mirror of [`ab_integral_left`] on
/// `[tau, b]`.
pub fn ab_integral_right(pt: &OperatorPoint) -> Result<f64, OperatorError> {
    let alpha = pt.order.value();
    let b_norm = pt.norm.value(alpha);
    Ok((1.0 - alpha) / b_norm * pt.f.eval(pt.tau) + alpha / b_norm * rl_integral_right(pt)?)
}

/// Caputo-Fabrizio left integral:
/// `(1-alpha)/B(alpha) · f(tau) + alpha/B(alpha) · Int_a^tau f`.
pub fn cf_integral_left(pt: &OperatorPoint) -> Result<f64, OperatorError> {
    let alpha = pt.order.value();
    let b_norm = pt.norm.value(alpha);
    let q = integrate(|y| pt.f.eval(y), pt.a, pt.tau, &pt.quad)?;
    Ok((1.0 - alpha) / b_norm * pt.f.eval(pt.tau) + alpha / b_norm * q.value)
}

/// Caputo-Fabrizio right integral, the mirror of [`cf_integral_left`].
pub fn cf_integral_right(pt: &OperatorPoint) -> Result<f64, OperatorError> {
    let alpha = pt.order.value();
    let b_norm = pt.norm.value(alpha);
    let q = integrate(|y| pt.f.eval(y), pt.tau, pt.b, &pt.quad)?;
    Ok((1.0 - alpha) / b_norm * pt.f.eval(pt.tau) + alpha / b_norm * q.value)
}

/// Adaptive integration of a fallible integrand: kernel evaluation errors
/// raised inside the quadrature closure are captured and surfaced instead of
/// silently poisoning the sum.
fn integrate_fallible<F>(
    integrand: F,
    a: f64,
    b: f64,
    quad: &QuadSpec,
) -> Result<f64, OperatorError>
where
    F: Fn(f64) -> Result<f64, SpecialError>,
{
    let slot: RefCell<Option<SpecialError>> = RefCell::new(None);
    let wrapped = |x: f64| match integrand(x) {
        Ok(v) => v,
        Err(err) => {
            slot.borrow_mut().get_or_insert(err);
            f64::NAN
        }
    };
    let q = integrate(wrapped, a, b, quad);
    if let Some(err) = slot.into_inner() {
        return Err(err.into());
    }
    Ok(q?.value)
}

/// `Int_a^s g(x) E_alpha(-lambda (s - x)^alpha) dx`.
fn ml_kernel_integral(
    g: &dyn Fn(f64) -> f64,
    a: f64,
    s: f64,
    alpha: f64,
    lambda: f64,
    quad: &QuadSpec,
) -> Result<f64, OperatorError> {
    integrate_fallible(
        |x| Ok(g(x) * mittag_leffler(alpha, -lambda * (s - x).powf(alpha))?),
        a,
        s,
        quad,
    )
}

/// Atangana-Baleanu derivative in the Caputo sense:
/// `B(alpha)/(1-alpha) Int_a^tau f'(x) E_alpha(-alpha (tau-x)^alpha / (1-alpha)) dx`.
pub fn abc_derivative(pt: &OperatorPoint) -> Result<f64, OperatorError> {
    let alpha = derivative_order(pt)?;
    let b_norm = pt.norm.value(alpha);
    let lambda = alpha / (1.0 - alpha);
    let v = ml_kernel_integral(&|x| pt.f.deriv(x), pt.a, pt.tau, alpha, lambda, &pt.quad)?;
    Ok(b_norm / (1.0 - alpha) * v)
}

/// Atangana-Baleanu derivative in the Riemann sense:
/// `B(alpha)/(1-alpha) d/dtau Int_a^tau f(x) E_alpha(-alpha (tau-x)^alpha / (1-alpha)) dx`,
/// with the outer derivative taken by a 5-point central difference with step
/// `h = max(1e-5, 1e-5 |tau|)`.
pub fn abr_derivative(pt: &OperatorPoint) -> Result<f64, OperatorError> {
    let alpha = derivative_order(pt)?;
    let b_norm = pt.norm.value(alpha);
    let lambda = alpha / (1.0 - alpha);
    let h = 1e-5_f64.max(1e-5 * pt.tau.abs());
    if pt.tau - 2.0 * h < pt.a || pt.tau + 2.0 * h > pt.b {
        return Err(OperatorError::StencilOutsideInterval {
            tau: pt.tau,
            a: pt.a,
            b: pt.b,
            needed: 2.0 * h,
        });
    }
    // The difference quotient amplifies quadrature error by ~1/(12h), so the
    // stencil is evaluated through the pairwise differences
    // [8 (F(tau+h) - F(tau-h)) - (F(tau+2h) - F(tau-2h))] / (12h),
    // each difference computed as a single integral: the kernel difference
    // over the shared range plus the freshly uncovered tail. The integrands
    // are O(h)-sized, so their quadrature error scales down with h and the
    // amplification cancels.
    let diff_spec = QuadSpec {
        rel_tol: (pt.quad.rel_tol * 1e-2).max(1e-11),
        abs_tol: (pt.quad.abs_tol * 1e-4).max(1e-16),
        ..pt.quad
    };
    let kernel = |u: f64| mittag_leffler(alpha, -lambda * u.powf(alpha));
    let delta = |s1: f64, s2: f64| -> Result<f64, OperatorError> {
        let run = |spec: &QuadSpec| -> Result<f64, OperatorError> {
            let shared = integrate_fallible(
                |x| Ok(pt.f.eval(x) * (kernel(s2 - x)? - kernel(s1 - x)?)),
                pt.a,
                s1,
                spec,
            )?;
            let tail = integrate_fallible(|x| Ok(pt.f.eval(x) * kernel(s2 - x)?), s1, s2, spec)?;
            Ok(shared + tail)
        };
        let mut spec = diff_spec;
        loop {
            match run(&spec) {
                // The embedded error estimate bottoms out at the panel-sum
                // roundoff floor, which scales with the integrand; when the
                // absolute target lands under that floor, relax it a decade
                // at a time up to the caller's own tolerance.
                Err(OperatorError::Quadrature(QuadError::ToleranceNotMet { .. }))
                    if spec.abs_tol < pt.quad.abs_tol =>
                {
                    spec.abs_tol *= 10.0;
                }
                other => return other,
            }
        }
    };
    let d1 = delta(pt.tau - h, pt.tau + h)?;
    let d2 = delta(pt.tau - 2.0 * h, pt.tau + 2.0 * h)?;
    let d = (8.0 * d1 - d2) / (12.0 * h);
    Ok(b_norm / (1.0 - alpha) * d)
}

/// Caputo-Fabrizio derivative:
/// `M(alpha)/(1-alpha) Int_a^tau f'(s) exp(-alpha (tau-s)/(1-alpha)) ds`.
pub fn cf_derivative(pt: &OperatorPoint) -> Result<f64, OperatorError> {
    let alpha = derivative_order(pt)?;
    let m_norm = pt.norm.value(alpha);
    let rate = alpha / (1.0 - alpha);
    let tau = pt.tau;
    let q = integrate(|s| pt.f.deriv(s) * (-rate * (tau - s)).exp(), pt.a, tau, &pt.quad)?;
    Ok(m_norm / (1.0 - alpha) * q.value)
}
