//! Bullen-type bounds for the four-term Atangana-Baleanu expression, plus
//! the classical Hermite-Hadamard and Bullen inequalities used as their
//! `alpha = 1` anchors.
//!
//! Each fractional theorem bounds `|lemma_lhs|` (see [`crate::identity`]) by
//! a closed-form right-hand side in `|f'(a)|`, `|f'(b)|` (or `f'` at interior
//! nodes), the order `alpha`, and optionally a Holder exponent pair. A bound
//! only *applies* when its convexity/concavity hypothesis holds, so
//! [`verify_bound`] first consults the [`TestFunction`] flags and reports
//! [`BoundStatus::HypothesisUnmet`] instead of judging an inapplicable case;
//! the numerical values are still computed and returned for inspection.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::corpus::{RealFunction, TestFunction};
use crate::identity::{bullen_deficit, lemma_lhs, LemmaInstance};
use crate::operators::{FractionalOrder, Normalization, OperatorError};
use crate::quad::QuadSpec;

/// A bound is judged to hold when `slack = rhs - lhs >= -TOL_SLACK`, so
/// quadrature noise on an exact equality cannot flip the verdict.
pub const TOL_SLACK: f64 = 1e-9;

/// The eight verifiable statements: six fractional Bullen-type bounds and
/// the two classical integral inequalities they reduce to at `alpha = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Theorem {
    /// `|lhs| <= 2(A + B)/(alpha+1)` when `|f'|` is convex.
    ConvexAbs,
    /// Holder-split bound with conjugate exponents, `|f'|^q` convex.
    Holder,
    /// Power-mean refinement, `|f'|^q` convex, `q >= 1`.
    PowerMean,
    /// Young-split bound with conjugate exponents, `|f'|^q` convex.
    Young,
    /// Jensen bound at four interior nodes, `|f'|` concave.
    ConcaveJensen,
    /// Holder-split bound at two quarter-point nodes, `|f'|^q` concave.
    ConcaveHolder,
    /// `f(m) <= average of f <= (f(a)+f(b))/2` for convex `f`.
    HermiteHadamard,
    /// `average of f <= [f(m) + (f(a)+f(b))/2]/2` for convex `f`.
    Bullen,
}

impl Theorem {
    pub const ALL: [Theorem; 8] = [
        Theorem::ConvexAbs,
        Theorem::Holder,
        Theorem::PowerMean,
        Theorem::Young,
        Theorem::ConcaveJensen,
        Theorem::ConcaveHolder,
        Theorem::HermiteHadamard,
        Theorem::Bullen,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Theorem::ConvexAbs => "ConvexAbs",
            Theorem::Holder => "Holder",
            Theorem::PowerMean => "PowerMean",
            Theorem::Young => "Young",
            Theorem::ConcaveJensen => "ConcaveJensen",
            Theorem::ConcaveHolder => "ConcaveHolder",
            Theorem::HermiteHadamard => "HermiteHadamard",
            Theorem::Bullen => "Bullen",
        }
    }

    /// Human-readable applicability condition, used by the CLI listing.
    pub fn hypothesis(self) -> &'static str {
        match self {
            Theorem::ConvexAbs => "|f'| convex",
            Theorem::Holder | Theorem::PowerMean | Theorem::Young => "|f'|^q convex",
            Theorem::ConcaveJensen => "|f'| concave",
            Theorem::ConcaveHolder => "|f'|^q concave",
            Theorem::HermiteHadamard | Theorem::Bullen => "f convex",
        }
    }

    /// Whether the theorem consumes a conjugate exponent pair `(p, q)`.
    pub fn uses_exponents(self) -> bool {
        matches!(
            self,
            Theorem::Holder | Theorem::PowerMean | Theorem::Young | Theorem::ConcaveHolder
        )
    }

    /// Whether the statement involves the fractional order at all; the two
    /// classical inequalities do not.
    pub fn uses_order(self) -> bool {
        !matches!(self, Theorem::HermiteHadamard | Theorem::Bullen)
    }
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Theorem {
    type Err = BoundsError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Theorem::ALL
            .into_iter()
            .find(|t| t.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| BoundsError::UnknownTheorem(s.to_string()))
    }
}

#[derive(Debug, Error)]
pub enum BoundsError {
    #[error("invalid exponent for {theorem}: {detail}")]
    BadExponent { theorem: Theorem, detail: String },
    #[error("exponents must be a conjugate pair with 1/p + 1/q = 1, got p={p}, q={q}")]
    ConjugateMismatch { p: f64, q: f64 },
    #[error(
        "unknown theorem '{0}'; expected one of ConvexAbs, Holder, PowerMean, Young, \
         ConcaveJensen, ConcaveHolder, HermiteHadamard, Bullen"
    )]
    UnknownTheorem(String),
    #[error(transparent)]
    Operator(#[from] OperatorError),
}

/// One bound to verify: the function (with its certified hypothesis flags),
/// the interval, the order, the optional exponent pair, and the theorem.
#[derive(Clone, Copy)]
pub struct BoundInstance<'a> {
    pub f: &'a TestFunction,
    pub a: f64,
    pub b: f64,
    pub alpha: FractionalOrder,
    pub p: Option<f64>,
    pub q: Option<f64>,
    pub theorem: Theorem,
    pub norm: Normalization,
    pub quad: QuadSpec,
}

impl<'a> BoundInstance<'a> {
    pub fn new(
        f: &'a TestFunction,
        a: f64,
        b: f64,
        alpha: f64,
        theorem: Theorem,
    ) -> Result<Self, BoundsError> {
        if !(a.is_finite() && b.is_finite() && a < b) {
            return Err(OperatorError::BadInterval { a, b }.into());
        }
        Ok(Self {
            f,
            a,
            b,
            alpha: FractionalOrder::new(alpha)?,
            p: None,
            q: None,
            theorem,
            norm: Normalization::default(),
            quad: QuadSpec::default(),
        })
    }

    pub fn with_exponents(mut self, p: f64, q: f64) -> Self {
        self.p = Some(p);
        self.q = Some(q);
        self
    }

    /// Validated conjugate pair for the Holder/Young-flavored theorems.
    fn conjugate_pair(&self) -> Result<(f64, f64), BoundsError> {
        let missing = |name: &str| BoundsError::BadExponent {
            theorem: self.theorem,
            detail: format!("{name} is required but was not supplied"),
        };
        let p = self.p.ok_or_else(|| missing("p"))?;
        let q = self.q.ok_or_else(|| missing("q"))?;
        if !(p.is_finite() && p > 1.0) {
            return Err(BoundsError::BadExponent {
                theorem: self.theorem,
                detail: format!("p must be finite and > 1, got {p}"),
            });
        }
        if !(q.is_finite() && q > 1.0) {
            return Err(BoundsError::BadExponent {
                theorem: self.theorem,
                detail: format!("q must be finite and > 1, got {q}"),
            });
        }
        if (1.0 / p + 1.0 / q - 1.0).abs() > 1e-12 {
            return Err(BoundsError::ConjugateMismatch { p, q });
        }
        Ok((p, q))
    }

    /// The exponent the power-mean bound actually uses; `q = 1` is allowed
    /// (the bound then collapses to the plain convex-|f'| bound).
    fn power_mean_exponent(&self) -> Result<f64, BoundsError> {
        let q = self.q.ok_or(BoundsError::BadExponent {
            theorem: self.theorem,
            detail: "q is required but was not supplied".to_string(),
        })?;
        if !(q.is_finite() && q >= 1.0) {
            return Err(BoundsError::BadExponent {
                theorem: self.theorem,
                detail: format!("q must be finite and >= 1, got {q}"),
            });
        }
        Ok(q)
    }

    /// Does the certified flag set license this theorem on this function?
    fn hypothesis_met(&self) -> Result<bool, BoundsError> {
        Ok(match self.theorem {
            Theorem::ConvexAbs => self.f.flags.abs_fprime_convex,
            Theorem::Holder | Theorem::Young => {
                let (_, q) = self.conjugate_pair()?;
                self.f.q_convex.is_some_and(|r| r.contains(q))
            }
            Theorem::PowerMean => {
                let q = self.power_mean_exponent()?;
                self.f.q_convex.is_some_and(|r| r.contains(q))
            }
            Theorem::ConcaveJensen => self.f.flags.abs_fprime_concave,
            Theorem::ConcaveHolder => {
                let (_, q) = self.conjugate_pair()?;
                self.f.q_concave.is_some_and(|r| r.contains(q))
            }
            Theorem::HermiteHadamard | Theorem::Bullen => self.f.flags.f_convex,
        })
    }
}

/// Verdict on one bound instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundStatus {
    Holds,
    Violated,
    HypothesisUnmet,
}

impl BoundStatus {
    pub fn name(self) -> &'static str {
        match self {
            BoundStatus::Holds => "Holds",
            BoundStatus::Violated => "Violated",
            BoundStatus::HypothesisUnmet => "HypothesisUnmet",
        }
    }
}

/// Numerical outcome of one bound: both sides, the slack `rhs - lhs_abs`,
/// and the verdict.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundReport {
    pub lhs_abs: f64,
    pub rhs: f64,
    pub slack: f64,
    pub status: BoundStatus,
}

/// `|lemma_lhs|`: the quantity every fractional theorem bounds.
pub fn lhs_abs(
    f: &dyn RealFunction,
    a: f64,
    b: f64,
    alpha: FractionalOrder,
    norm: Normalization,
    quad: QuadSpec,
) -> Result<f64, OperatorError> {
    let inst = LemmaInstance { f, a, b, alpha, norm, quad };
    Ok(lemma_lhs(&inst)?.abs())
}

fn endpoint_slopes(f: &dyn RealFunction, a: f64, b: f64) -> (f64, f64) {
    (f.deriv(a).abs(), f.deriv(b).abs())
}

/// `2(A + B)/(alpha + 1)` with `A = |f'(a)|`, `B = |f'(b)|`.
pub fn rhs_convex_abs(f: &dyn RealFunction, a: f64, b: f64, alpha: f64) -> f64 {
    let (big_a, big_b) = endpoint_slopes(f, a, b);
    2.0 * (big_a + big_b) / (alpha + 1.0)
}

/// `2/(alpha p + 1)^(1/p) · [((3A^q + B^q)/4)^(1/q) + ((3B^q + A^q)/4)^(1/q)]`.
pub fn rhs_holder(f: &dyn RealFunction, a: f64, b: f64, alpha: f64, p: f64) -> f64 {
    let q = p / (p - 1.0);
    let (big_a, big_b) = endpoint_slopes(f, a, b);
    let (aq, bq) = (big_a.powf(q), big_b.powf(q));
    2.0 / (alpha * p + 1.0).powf(1.0 / p)
        * (((3.0 * aq + bq) / 4.0).powf(1.0 / q) + ((3.0 * bq + aq) / 4.0).powf(1.0 / q))
}

/// The four weights of the power-mean bound; they satisfy
/// `c1 + c2 + c3 + c4 = 2/(alpha + 1)`.
pub fn power_mean_coefficients(alpha: f64) -> [f64; 4] {
    let d = 2.0 * (alpha + 1.0) * (alpha + 2.0);
    [(alpha + 3.0) / d, (alpha + 1.0) / d, (2.0 * alpha + 3.0) / d, 1.0 / d]
}

/// `(1/(alpha+1))^(1-1/q)` times the sum of four q-th power means of
/// `(A, B)` weighted by [`power_mean_coefficients`].
pub fn rhs_power_mean(f: &dyn RealFunction, a: f64, b: f64, alpha: f64, q: f64) -> f64 {
    let [c1, c2, c3, c4] = power_mean_coefficients(alpha);
    let (big_a, big_b) = endpoint_slopes(f, a, b);
    let (aq, bq) = (big_a.powf(q), big_b.powf(q));
    let mean = |x: f64| x.powf(1.0 / q);
    (1.0 / (alpha + 1.0)).powf(1.0 - 1.0 / q)
        * (mean(c1 * aq + c2 * bq)
            + mean(c3 * aq + c4 * bq)
            + mean(c3 * bq + c4 * aq)
            + mean(c1 * bq + c2 * aq))
}

/// `4/(p(alpha p + 1)) + 2(A^q + B^q)/q`.
pub fn rhs_young(f: &dyn RealFunction, a: f64, b: f64, alpha: f64, p: f64, q: f64) -> f64 {
    let (big_a, big_b) = endpoint_slopes(f, a, b);
    4.0 / (p * (alpha * p + 1.0)) + 2.0 * (big_a.powf(q) + big_b.powf(q)) / q
}

/// The four interior nodes of the Jensen bound, each a convex combination of
/// `a` and `b`.
pub fn jensen_nodes(a: f64, b: f64, alpha: f64) -> [f64; 4] {
    let d = 2.0 * (alpha + 2.0);
    [
        (a * (alpha + 3.0) + b * (alpha + 1.0)) / d,
        (a * (2.0 * alpha + 3.0) + b) / d,
        (b * (2.0 * alpha + 3.0) + a) / d,
        (b * (alpha + 3.0) + a * (alpha + 1.0)) / d,
    ]
}

/// `(1/(alpha+1)) · sum of |f'| over the four Jensen nodes`.
pub fn rhs_concave_jensen(f: &dyn RealFunction, a: f64, b: f64, alpha: f64) -> f64 {
    let total: f64 = jensen_nodes(a, b, alpha).iter().map(|&n| f.deriv(n).abs()).sum();
    total / (alpha + 1.0)
}

/// `2/(alpha p + 1)^(1/p) · [|f'((3a+b)/4)| + |f'((3b+a)/4)|]`.
pub fn rhs_concave_holder(f: &dyn RealFunction, a: f64, b: f64, alpha: f64, p: f64) -> f64 {
    2.0 / (alpha * p + 1.0).powf(1.0 / p)
        * (f.deriv((3.0 * a + b) / 4.0).abs() + f.deriv((3.0 * b + a) / 4.0).abs())
}

/// The factor by which the general bound at `alpha = 1`, on both of its
/// sides, exceeds the classical corollary form reported by
/// [`corollary_lhs_abs`] and [`corollary_rhs`]. It is 2 for every theorem
/// except the power-mean bound, whose classical form is stated unhalved.
pub fn corollary_factor(theorem: Theorem) -> f64 {
    match theorem {
        Theorem::PowerMean => 1.0,
        _ => 2.0,
    }
}

/// Left side of the classical (`alpha = 1`) corollary: a multiple of the
/// Bullen deficit, `4/(b-a)` times it for the halved statements and
/// `8/(b-a)` for the unhalved power-mean statement.
pub fn corollary_lhs_abs(
    f: &dyn RealFunction,
    a: f64,
    b: f64,
    theorem: Theorem,
    quad: &QuadSpec,
) -> Result<f64, OperatorError> {
    let scale = 8.0 / corollary_factor(theorem) / (b - a);
    Ok((scale * bullen_deficit(f, a, b, quad)?).abs())
}

/// Right side of the classical (`alpha = 1`) corollary for the six
/// fractional theorems.
pub fn corollary_rhs(
    f: &dyn RealFunction,
    a: f64,
    b: f64,
    theorem: Theorem,
    p: Option<f64>,
    q: Option<f64>,
) -> Result<f64, BoundsError> {
    let need = |v: Option<f64>, name: &str| {
        v.ok_or_else(|| BoundsError::BadExponent {
            theorem,
            detail: format!("{name} is required but was not supplied"),
        })
    };
    Ok(match theorem {
        Theorem::ConvexAbs => rhs_convex_abs(f, a, b, 1.0) / 2.0,
        Theorem::Holder => rhs_holder(f, a, b, 1.0, need(p, "p")?) / 2.0,
        Theorem::PowerMean => rhs_power_mean(f, a, b, 1.0, need(q, "q")?),
        Theorem::Young => {
            rhs_young(f, a, b, 1.0, need(p, "p")?, need(q, "q")?) / 2.0
        }
        Theorem::ConcaveJensen => rhs_concave_jensen(f, a, b, 1.0) / 2.0,
        Theorem::ConcaveHolder => rhs_concave_holder(f, a, b, 1.0, need(p, "p")?) / 2.0,
        Theorem::HermiteHadamard | Theorem::Bullen => {
            return Err(BoundsError::BadExponent {
                theorem,
                detail: "the classical inequalities have no corollary form".to_string(),
            })
        }
    })
}

/// Hermite-Hadamard: `f(m) <= (1/(b-a)) Int f <= (f(a)+f(b))/2` for convex
/// `f`. The report carries `lhs_abs = f(m)`, `rhs = (f(a)+f(b))/2`, and the
/// slack is the smaller of the two constituent gaps, so a violation of
/// either half surfaces.
pub fn check_hermite_hadamard(
    f: &dyn RealFunction,
    a: f64,
    b: f64,
    quad: &QuadSpec,
) -> Result<BoundReport, OperatorError> {
    if !(a.is_finite() && b.is_finite() && a < b) {
        return Err(OperatorError::BadInterval { a, b });
    }
    let avg = crate::quad::integrate(|x| f.eval(x), a, b, quad)?.value / (b - a);
    let mid = f.eval(0.5 * (a + b));
    let trap = 0.5 * (f.eval(a) + f.eval(b));
    let slack = (avg - mid).min(trap - avg);
    Ok(judged(mid, trap, slack))
}

/// Bullen: the average of `f` does not exceed the mean of its midpoint and
/// trapezoidal values; `slack` is exactly the Bullen deficit.
pub fn check_bullen(
    f: &dyn RealFunction,
    a: f64,
    b: f64,
    quad: &QuadSpec,
) -> Result<BoundReport, OperatorError> {
    if !(a.is_finite() && b.is_finite() && a < b) {
        return Err(OperatorError::BadInterval { a, b });
    }
    let avg = crate::quad::integrate(|x| f.eval(x), a, b, quad)?.value / (b - a);
    let mid = f.eval(0.5 * (a + b));
    let trap = 0.5 * (f.eval(a) + f.eval(b));
    let rhs = 0.5 * (mid + trap);
    Ok(judged(avg, rhs, rhs - avg))
}

fn judged(lhs_abs: f64, rhs: f64, slack: f64) -> BoundReport {
    let status = if slack >= -TOL_SLACK { BoundStatus::Holds } else { BoundStatus::Violated };
    BoundReport { lhs_abs, rhs, slack, status }
}

/// Evaluates one bound instance end to end. Both sides are computed even
/// when the hypothesis gate fails, but in that case the verdict is
/// [`BoundStatus::HypothesisUnmet`] rather than a judgment.
pub fn verify_bound(inst: &BoundInstance) -> Result<BoundReport, BoundsError> {
    let met = inst.hypothesis_met()?;
    let alpha = inst.alpha.value();
    let mut report = match inst.theorem {
        Theorem::HermiteHadamard => check_hermite_hadamard(inst.f, inst.a, inst.b, &inst.quad)?,
        Theorem::Bullen => check_bullen(inst.f, inst.a, inst.b, &inst.quad)?,
        theorem => {
            let rhs = match theorem {
                Theorem::ConvexAbs => rhs_convex_abs(inst.f, inst.a, inst.b, alpha),
                Theorem::Holder => {
                    let (p, _) = inst.conjugate_pair()?;
                    rhs_holder(inst.f, inst.a, inst.b, alpha, p)
                }
                Theorem::PowerMean => {
                    rhs_power_mean(inst.f, inst.a, inst.b, alpha, inst.power_mean_exponent()?)
                }
                Theorem::Young => {
                    let (p, q) = inst.conjugate_pair()?;
                    rhs_young(inst.f, inst.a, inst.b, alpha, p, q)
                }
                Theorem::ConcaveJensen => rhs_concave_jensen(inst.f, inst.a, inst.b, alpha),
                Theorem::ConcaveHolder => {
                    let (p, _) = inst.conjugate_pair()?;
                    rhs_concave_holder(inst.f, inst.a, inst.b, alpha, p)
                }
                Theorem::HermiteHadamard | Theorem::Bullen => unreachable!(),
            };
            let lhs = lhs_abs(inst.f, inst.a, inst.b, inst.alpha, inst.norm, inst.quad)?;
            judged(lhs, rhs, rhs - lhs)
        }
    };
    if !met {
        report.status = BoundStatus::HypothesisUnmet;
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{lookup, ClosureFunction};
    use approx::assert_relative_eq;

    fn quadratic() -> TestFunction {
        lookup("quadratic").unwrap()
    }

    #[test]
    fn power_mean_coefficients_close_to_the_convex_abs_constant() {
        for i in 0..=20 {
            let alpha = 0.05 * i as f64 + 1e-3;
            let sum: f64 = power_mean_coefficients(alpha).iter().sum();
            assert_relative_eq!(sum, 2.0 / (alpha + 1.0), max_relative = 1e-14);
        }
    }

    #[test]
    fn power_mean_at_q_one_collapses_to_convex_abs() {
        let f = ClosureFunction::new(f64::exp, f64::exp);
        for alpha in [0.1, 0.4, 0.75, 1.0] {
            let pm = rhs_power_mean(&f, 0.0, 2.0, alpha, 1.0);
            let ca = rhs_convex_abs(&f, 0.0, 2.0, alpha);
            assert_relative_eq!(pm, ca, max_relative = 1e-13);
        }
    }

    #[test]
    fn jensen_nodes_are_interior_and_symmetric() {
        let (a, b) = (-1.0, 2.0);
        for alpha in [0.1, 0.5, 1.0] {
            let nodes = jensen_nodes(a, b, alpha);
            for n in nodes {
                assert!(a < n && n < b, "node {n} escaped ({a}, {b}) at alpha={alpha}");
            }
            // nodes come in mirror pairs around the midpoint
            let m = 0.5 * (a + b);
            assert_relative_eq!(nodes[0] - m, m - nodes[3], max_relative = 1e-13);
            assert_relative_eq!(nodes[1] - m, m - nodes[2], max_relative = 1e-13);
        }
    }

    // Closed-form spot values for f = x^2 on [0, 1] at alpha = 1,
    // hand-computed from the bound formulas: A = 0, B = 2.

    #[test]
    fn convex_abs_matches_hand_computation() {
        let f = quadratic();
        assert_relative_eq!(rhs_convex_abs(&f, 0.0, 1.0, 1.0), 2.0, max_relative = 1e-14);
        // general LHS at alpha = 1 is 1/3, so the bound holds with slack 5/3
        let inst = BoundInstance::new(&f, 0.0, 1.0, 1.0, Theorem::ConvexAbs).unwrap();
        let r = verify_bound(&inst).unwrap();
        assert_eq!(r.status, BoundStatus::Holds);
        assert_relative_eq!(r.lhs_abs, 1.0 / 3.0, max_relative = 1e-10);
        assert_relative_eq!(r.slack, 5.0 / 3.0, max_relative = 1e-9);
    }

    #[test]
    fn holder_matches_hand_computation() {
        // 2/sqrt(3) · (1 + sqrt(3)) at p = q = 2
        let f = quadratic();
        let want = 2.0 / 3.0_f64.sqrt() * (1.0 + 3.0_f64.sqrt());
        assert_relative_eq!(rhs_holder(&f, 0.0, 1.0, 1.0, 2.0), want, max_relative = 1e-14);
    }

    #[test]
    fn young_matches_hand_computation() {
        // 4/(2·3) + 2·(0 + 4)/2 = 14/3 at p = q = 2
        let f = quadratic();
        assert_relative_eq!(
            rhs_young(&f, 0.0, 1.0, 1.0, 2.0, 2.0),
            14.0 / 3.0,
            max_relative = 1e-14
        );
    }

    #[test]
    fn corollary_forms_match_their_factors() {
        let f = quadratic();
        let (a, b) = (0.0, 1.0);
        let (p, q) = (2.0, 2.0);
        for theorem in [
            Theorem::ConvexAbs,
            Theorem::Holder,
            Theorem::PowerMean,
            Theorem::Young,
            Theorem::ConcaveJensen,
            Theorem::ConcaveHolder,
        ] {
            let factor = corollary_factor(theorem);
            let general = match theorem {
                Theorem::ConvexAbs => rhs_convex_abs(&f, a, b, 1.0),
                Theorem::Holder => rhs_holder(&f, a, b, 1.0, p),
                Theorem::PowerMean => rhs_power_mean(&f, a, b, 1.0, q),
                Theorem::Young => rhs_young(&f, a, b, 1.0, p, q),
                Theorem::ConcaveJensen => rhs_concave_jensen(&f, a, b, 1.0),
                Theorem::ConcaveHolder => rhs_concave_holder(&f, a, b, 1.0, p),
                _ => unreachable!(),
            };
            let cor = corollary_rhs(&f, a, b, theorem, Some(p), Some(q)).unwrap();
            assert_relative_eq!(general, factor * cor, max_relative = 1e-13);

            let general_lhs = lhs_abs(
                &f,
                a,
                b,
                FractionalOrder::new(1.0).unwrap(),
                Normalization::Unit,
                QuadSpec::default(),
            )
            .unwrap();
            let cor_lhs = corollary_lhs_abs(&f, a, b, theorem, &QuadSpec::default()).unwrap();
            assert_relative_eq!(general_lhs, factor * cor_lhs, max_relative = 1e-10);
        }
    }

    #[test]
    fn corollary_named_constants() {
        // ConvexAbs corollary for x^2 on [0,1]: LHS 1/6, RHS (A+B)/2 = 1
        let f = quadratic();
        let lhs = corollary_lhs_abs(&f, 0.0, 1.0, Theorem::ConvexAbs, &QuadSpec::default()).unwrap();
        assert_relative_eq!(lhs, 1.0 / 6.0, max_relative = 1e-11);
        let rhs = corollary_rhs(&f, 0.0, 1.0, Theorem::ConvexAbs, None, None).unwrap();
        assert_relative_eq!(rhs, 1.0, max_relative = 1e-14);

        // Young corollary constant 2/(p^2 + p) and Holder constant 1/(p+1)^(1/p)
        let p = 3.0;
        let q = 1.5;
        let zero_slope = ClosureFunction::new(|_| 1.0, |_| 0.0);
        let young = corollary_rhs(&zero_slope, 0.0, 1.0, Theorem::Young, Some(p), Some(q)).unwrap();
        assert_relative_eq!(young, 2.0 / (p * p + p), max_relative = 1e-14);
        let unit_slope = ClosureFunction::new(|x| x, |_| 1.0);
        let holder =
            corollary_rhs(&unit_slope, 0.0, 1.0, Theorem::Holder, Some(p), Some(q)).unwrap();
        assert_relative_eq!(holder, 2.0 / (p + 1.0).powf(1.0 / p), max_relative = 1e-14);
    }

    #[test]
    fn scale_homogeneity_of_degree_one_bounds() {
        let f = quadratic();
        let scaled = f.scaled(3.5);
        let alpha = 0.6;
        assert_relative_eq!(
            rhs_convex_abs(&scaled, 0.0, 1.0, alpha),
            3.5 * rhs_convex_abs(&f, 0.0, 1.0, alpha),
            max_relative = 1e-13
        );
        assert_relative_eq!(
            rhs_concave_jensen(&scaled, 0.0, 1.0, alpha),
            3.5 * rhs_concave_jensen(&f, 0.0, 1.0, alpha),
            max_relative = 1e-13
        );
        assert_relative_eq!(
            rhs_concave_holder(&scaled, 0.0, 1.0, alpha, 2.0),
            3.5 * rhs_concave_holder(&f, 0.0, 1.0, alpha, 2.0),
            max_relative = 1e-13
        );
        let order = FractionalOrder::new(alpha).unwrap();
        let lhs_f = lhs_abs(&f, 0.0, 1.0, order, Normalization::Unit, QuadSpec::default()).unwrap();
        let lhs_s =
            lhs_abs(&scaled, 0.0, 1.0, order, Normalization::Unit, QuadSpec::default()).unwrap();
        assert_relative_eq!(lhs_s, 3.5 * lhs_f, max_relative = 1e-10);
    }

    #[test]
    fn hermite_hadamard_and_bullen_on_classical_examples() {
        let f = quadratic();
        let hh = check_hermite_hadamard(&f, 0.0, 1.0, &QuadSpec::default()).unwrap();
        assert_eq!(hh.status, BoundStatus::Holds);
        assert_relative_eq!(hh.lhs_abs, 0.25, max_relative = 1e-13);
        assert_relative_eq!(hh.rhs, 0.5, max_relative = 1e-13);
        assert_relative_eq!(hh.slack, 1.0 / 12.0, max_relative = 1e-10);

        let bullen = check_bullen(&f, 0.0, 1.0, &QuadSpec::default()).unwrap();
        assert_eq!(bullen.status, BoundStatus::Holds);
        assert_relative_eq!(bullen.lhs_abs, 1.0 / 3.0, max_relative = 1e-11);
        assert_relative_eq!(bullen.rhs, 3.0 / 8.0, max_relative = 1e-13);
        assert_relative_eq!(bullen.slack, 1.0 / 24.0, max_relative = 1e-10);

        let e = lookup("exp").unwrap();
        let hh = check_hermite_hadamard(&e, 0.0, 1.0, &QuadSpec::default()).unwrap();
        assert_relative_eq!(hh.lhs_abs, 0.5_f64.exp(), max_relative = 1e-13);
        assert_relative_eq!(hh.rhs, 0.5 * (1.0 + 1.0_f64.exp()), max_relative = 1e-13);
        assert_eq!(hh.status, BoundStatus::Holds);

        // linear functions meet both inequalities with equality
        let lin = lookup("linear").unwrap();
        let hh = check_hermite_hadamard(&lin, -1.0, 3.0, &QuadSpec::default()).unwrap();
        assert!(hh.slack.abs() < 1e-12);
        let bu = check_bullen(&lin, -1.0, 3.0, &QuadSpec::default()).unwrap();
        assert!(bu.slack.abs() < 1e-12);
    }

    #[test]
    fn hypothesis_gates_fire() {
        // sine has no certified q-convexity, so the Holder bound is unjudged
        let sine = lookup("sine").unwrap();
        let inst = BoundInstance::new(&sine, 0.0, 1.0, 0.5, Theorem::Holder)
            .unwrap()
            .with_exponents(2.0, 2.0);
        let r = verify_bound(&inst).unwrap();
        assert_eq!(r.status, BoundStatus::HypothesisUnmet);
        assert!(r.rhs.is_finite() && r.lhs_abs.is_finite());

        // quadratic's |f'| is convex, not concave, so Jensen is unjudged
        let f = quadratic();
        let inst = BoundInstance::new(&f, 0.0, 1.0, 0.5, Theorem::ConcaveJensen).unwrap();
        let r = verify_bound(&inst).unwrap();
        assert_eq!(r.status, BoundStatus::HypothesisUnmet);

        // sine is concave, so Hermite-Hadamard (stated for convex f) is unjudged
        let inst = BoundInstance::new(&sine, 0.0, 1.0, 1.0, Theorem::HermiteHadamard).unwrap();
        let r = verify_bound(&inst).unwrap();
        assert_eq!(r.status, BoundStatus::HypothesisUnmet);
    }

    #[test]
    fn exponent_validation() {
        let f = quadratic();
        let inst = BoundInstance::new(&f, 0.0, 1.0, 0.5, Theorem::Holder).unwrap();
        assert!(matches!(verify_bound(&inst), Err(BoundsError::BadExponent { .. })));

        let inst = inst.with_exponents(1.0, f64::INFINITY);
        assert!(matches!(verify_bound(&inst), Err(BoundsError::BadExponent { .. })));

        let inst = BoundInstance::new(&f, 0.0, 1.0, 0.5, Theorem::Young)
            .unwrap()
            .with_exponents(2.0, 3.0);
        assert!(matches!(verify_bound(&inst), Err(BoundsError::ConjugateMismatch { .. })));
    }

    #[test]
    fn theorem_names_round_trip() {
        for t in Theorem::ALL {
            assert_eq!(t.name().parse::<Theorem>().unwrap(), t);
        }
        assert!("convexabs".parse::<Theorem>().is_ok());
        assert!(matches!(
            "NoSuchBound".parse::<Theorem>(),
            Err(BoundsError::UnknownTheorem(_))
        ));
    }

    #[test]
    fn quadratic_bounds_hold_across_orders() {
        let f = quadratic();
        for i in 1..=10 {
            let alpha = 0.1 * i as f64;
            let inst = BoundInstance::new(&f, 0.0, 1.0, alpha, Theorem::ConvexAbs).unwrap();
            let r = verify_bound(&inst).unwrap();
            assert_eq!(r.status, BoundStatus::Holds, "alpha={alpha}: slack {}", r.slack);

            let inst = BoundInstance::new(&f, 0.0, 1.0, alpha, Theorem::Young)
                .unwrap()
                .with_exponents(1.5, 3.0);
            let r = verify_bound(&inst).unwrap();
            assert_eq!(r.status, BoundStatus::Holds, "alpha={alpha}: slack {}", r.slack);
        }
    }
}
