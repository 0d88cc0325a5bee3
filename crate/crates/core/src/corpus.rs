//! Registry of closed-form test functions with analytic derivatives and
//! certified convexity/concavity metadata.
//!
//! Flags are certified analytically (one-line justification next to each
//! registration) rather than detected numerically; the theorem gates in the
//! bounds module trust them, so a wrong flag here would silently weaken the
//! verification grid. A self-test cross-checks every derivative against
//! finite differences and every flag against midpoint convexity probes.

use std::sync::Arc;

use thiserror::Error;

/// Shared scalar closure type used for `f` and `f'`.
pub type ScalarFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// A real function of one variable with an analytic derivative.
pub trait RealFunction {
    fn eval(&self, x: f64) -> f64;
    fn deriv(&self, x: f64) -> f64;
}

/// Shape claims for `f` and `|f'|` on the function's whole declared domain.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct FunctionFlags {
    pub f_convex: bool,
    pub f_concave: bool,
    pub abs_fprime_convex: bool,
    pub abs_fprime_concave: bool,
}

/// Inclusive range of exponents q for which a `|f'|^q` shape claim holds;
/// the upper end may be infinite.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QRange {
    pub lo: f64,
    pub hi: f64,
}

impl QRange {
    pub const fn new(lo: f64, hi: f64) -> Self {
        Self { lo, hi }
    }

    pub fn contains(&self, q: f64) -> bool {
        q >= self.lo && q <= self.hi
    }
}

/// A registered test function: closed forms, domain, and certified metadata.
#[derive(Clone)]
pub struct TestFunction {
    pub name: String,
    /// Closed domain on which `f`, `f'`, and all claimed flags are valid;
    /// endpoints may be infinite.
    pub domain: (f64, f64),
    pub flags: FunctionFlags,
    /// q-range on which `|f'|^q` is convex, if claimed.
    pub q_convex: Option<QRange>,
    /// q-range on which `|f'|^q` is concave, if claimed.
    pub q_concave: Option<QRange>,
    f: ScalarFn,
    fprime: ScalarFn,
}

impl RealFunction for TestFunction {
    fn eval(&self, x: f64) -> f64 {
        (self.f)(x)
    }

    fn deriv(&self, x: f64) -> f64 {
        (self.fprime)(x)
    }
}

impl std::fmt::Debug for TestFunction {
    fn fmt(&self, fmt: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        fmt.debug_struct("TestFunction")
            .field("name", &self.name)
            .field("domain", &self.domain)
            .field("flags", &self.flags)
            .field("q_convex", &self.q_convex)
            .field("q_concave", &self.q_concave)
            .finish_non_exhaustive()
    }
}

impl TestFunction {
    #[allow(clippy::too_many_arguments)]
    fn register(
        name: &str,
        domain: (f64, f64),
        f: ScalarFn,
        fprime: ScalarFn,
        flags: FunctionFlags,
        q_convex: Option<QRange>,
        q_concave: Option<QRange>,
    ) -> Self {
        Self { name: name.to_owned(), domain, flags, q_convex, q_concave, f, fprime }
    }

    /// Does `[a, b]` lie inside this function's declared domain?
    pub fn admits_interval(&self, a: f64, b: f64) -> bool {
        a >= self.domain.0 && b <= self.domain.1
    }

    /// `c·f`. Positive scaling preserves every shape flag; negative scaling
    /// swaps convex and concave claims for `f` (the `|f'|` claims need the
    /// absolute value of nothing new and survive either way).
    pub fn scaled(&self, c: f64) -> TestFunction {
        let f = Arc::clone(&self.f);
        let fp = Arc::clone(&self.fprime);
        let flags = if c >= 0.0 {
            self.flags
        } else {
            FunctionFlags {
                f_convex: self.flags.f_concave,
                f_concave: self.flags.f_convex,
                ..self.flags
            }
        };
        TestFunction {
            name: format!("{}*{}", c, self.name),
            domain: self.domain,
            flags,
            q_convex: self.q_convex,
            q_concave: self.q_concave,
            f: Arc::new(move |x| c * f(x)),
            fprime: Arc::new(move |x| c * fp(x)),
        }
    }

    /// `x -> f(x - s)` on the shifted domain. Shape flags are translation
    /// invariant.
    pub fn shifted(&self, s: f64) -> TestFunction {
        let f = Arc::clone(&self.f);
        let fp = Arc::clone(&self.fprime);
        TestFunction {
            name: format!("{}<<{}", self.name, s),
            domain: (self.domain.0 + s, self.domain.1 + s),
            flags: self.flags,
            q_convex: self.q_convex,
            q_concave: self.q_concave,
            f: Arc::new(move |x| f(x - s)),
            fprime: Arc::new(move |x| fp(x - s)),
        }
    }

    /// `x -> f(a + b - x)`: reflection about the midpoint of `[a, b]`.
    /// Composition with an affine map preserves all shape flags.
    pub fn reflected(&self, a: f64, b: f64) -> TestFunction {
        let f = Arc::clone(&self.f);
        let fp = Arc::clone(&self.fprime);
        let s = a + b;
        TestFunction {
            name: format!("{}~[{},{}]", self.name, a, b),
            domain: (s - self.domain.1, s - self.domain.0),
            flags: self.flags,
            q_convex: self.q_convex,
            q_concave: self.q_concave,
            f: Arc::new(move |x| f(s - x)),
            fprime: Arc::new(move |x| -fp(s - x)),
        }
    }

    /// `c1·f + c2·g` on the intersected domain. No shape flags are claimed:
    /// combinations are used for operator-linearity tests only.
    pub fn linear_combination(c1: f64, f1: &TestFunction, c2: f64, f2: &TestFunction) -> TestFunction {
        let fa = Arc::clone(&f1.f);
        let fap = Arc::clone(&f1.fprime);
        let fb = Arc::clone(&f2.f);
        let fbp = Arc::clone(&f2.fprime);
        TestFunction {
            name: format!("{}*{}+{}*{}", c1, f1.name, c2, f2.name),
            domain: (f1.domain.0.max(f2.domain.0), f1.domain.1.min(f2.domain.1)),
            flags: FunctionFlags::default(),
            q_convex: None,
            q_concave: None,
            f: Arc::new(move |x| c1 * fa(x) + c2 * fb(x)),
            fprime: Arc::new(move |x| c1 * fap(x) + c2 * fbp(x)),
        }
    }
}

/// An ad-hoc function built from closures, for tests and callers that need a
/// [`RealFunction`] without corpus metadata.
pub struct ClosureFunction {
    f: ScalarFn,
    fprime: ScalarFn,
}

impl ClosureFunction {
    pub fn new(
        f: impl Fn(f64) -> f64 + Send + Sync + 'static,
        fprime: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) -> Self {
        Self { f: Arc::new(f), fprime: Arc::new(fprime) }
    }
}

impl RealFunction for ClosureFunction {
    fn eval(&self, x: f64) -> f64 {
        (self.f)(x)
    }

    fn deriv(&self, x: f64) -> f64 {
        (self.fprime)(x)
    }
}

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("unknown function `{name}`; available: {available}")]
    UnknownFunction { name: String, available: String },
}

const UNBOUNDED: (f64, f64) = (f64::NEG_INFINITY, f64::INFINITY);

/// The builtin corpus. Flag justifications (one line each) sit next to each
/// entry; domains are chosen so every claim holds on the whole domain.
pub fn register_builtins() -> Vec<TestFunction> {
    let every_q = Some(QRange::new(1.0, f64::INFINITY));
    vec![
        // f = 5/2: affine, so convex and concave; |f'| = 0 is affine, so
        // |f'|^q = 0 is likewise both convex and concave for every q >= 1.
        TestFunction::register(
            "constant",
            UNBOUNDED,
            Arc::new(|_| 2.5),
            Arc::new(|_| 0.0),
            FunctionFlags {
                f_convex: true,
                f_concave: true,
                abs_fprime_convex: true,
                abs_fprime_concave: true,
            },
            every_q,
            every_q,
        ),
        // f = x: affine; |f'| = 1 and |f'|^q = 1 are constant, hence both.
        TestFunction::register(
            "linear",
            UNBOUNDED,
            Arc::new(|x| x),
            Arc::new(|_| 1.0),
            FunctionFlags {
                f_convex: true,
                f_concave: true,
                abs_fprime_convex: true,
                abs_fprime_concave: true,
            },
            every_q,
            every_q,
        ),
        // f = x^2: convex (f'' = 2); |f'| = 2|x| convex; |2x|^q = 2^q·|x|^q
        // convex for q >= 1 (power of the convex nonnegative |x|).
        TestFunction::register(
            "quadratic",
            UNBOUNDED,
            Arc::new(|x| x * x),
            Arc::new(|x| 2.0 * x),
            FunctionFlags { f_convex: true, abs_fprime_convex: true, ..Default::default() },
            every_q,
            None,
        ),
        // f = x^4: convex (f'' = 12x^2 >= 0); |f'| = 4|x|^3 convex;
        // |f'|^q = 4^q·|x|^(3q) convex for q >= 1 (exponent 3q >= 1).
        TestFunction::register(
            "quartic",
            UNBOUNDED,
            Arc::new(|x| x.powi(4)),
            Arc::new(|x| 4.0 * x.powi(3)),
            FunctionFlags { f_convex: true, abs_fprime_convex: true, ..Default::default() },
            every_q,
            None,
        ),
        // f = e^x: convex; |f'| = e^x convex; |f'|^q = e^(qx) convex for all q.
        TestFunction::register(
            "exp",
            UNBOUNDED,
            Arc::new(f64::exp),
            Arc::new(f64::exp),
            FunctionFlags { f_convex: true, abs_fprime_convex: true, ..Default::default() },
            every_q,
            None,
        ),
        // f = x·ln x on [1/2, inf): convex (f'' = 1/x > 0); there
        // f' = ln x + 1 >= 1 - ln 2 > 0, so |f'| = ln x + 1, concave
        // (second derivative -1/x^2 < 0). No |f'|^q claim: (ln x + 1)^q is
        // concave on this domain only for q <= 2 - ln 2 ~ 1.31, below the
        // verification grid's q values.
        TestFunction::register(
            "xlogx",
            (0.5, f64::INFINITY),
            Arc::new(|x: f64| x * x.ln()),
            Arc::new(|x: f64| x.ln() + 1.0),
            FunctionFlags { f_convex: true, abs_fprime_concave: true, ..Default::default() },
            None,
            None,
        ),
        // f = (2/3)(x + 1/100)^(3/2) on [0, inf): convex (f'' > 0); the
        // epsilon shift keeps f'' finite at 0. |f'| = (x + 1/100)^(1/2) is
        // concave (exponent 1/2 <= 1); |f'|^q = (x + 1/100)^(q/2) stays
        // concave exactly while q/2 <= 1, i.e. q in [1, 2].
        TestFunction::register(
            "sqrt_family",
            (0.0, f64::INFINITY),
            Arc::new(|x: f64| 2.0 / 3.0 * (x + 0.01).powf(1.5)),
            Arc::new(|x: f64| (x + 0.01).sqrt()),
            FunctionFlags { f_convex: true, abs_fprime_concave: true, ..Default::default() },
            None,
            Some(QRange::new(1.0, 2.0)),
        ),
        // f = sin x on [0, pi/2]: concave (f'' = -sin x <= 0); there
        // |f'| = cos x >= 0 is concave. No |f'|^q claim: cos^q x turns
        // convex near pi/2 for q > 1 ((q-1)·sin^2 x - cos^2 x changes sign).
        TestFunction::register(
            "sine",
            (0.0, std::f64::consts::FRAC_PI_2),
            Arc::new(f64::sin),
            Arc::new(f64::cos),
            FunctionFlags { f_concave: true, abs_fprime_concave: true, ..Default::default() },
            None,
            None,
        ),
    ]
}

/// Look a builtin up by name; the error lists the full vocabulary.
pub fn lookup(name: &str) -> Result<TestFunction, CorpusError> {
    let all = register_builtins();
    all.iter().find(|f| f.name == name).cloned().ok_or_else(|| CorpusError::UnknownFunction {
        name: name.to_owned(),
        available: all.iter().map(|f| f.name.as_str()).collect::<Vec<_>>().join(", "),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Deterministic 53-bit uniform samples in [0, 1).
    struct SplitMix(u64);

    impl SplitMix {
        fn next_f64(&mut self) -> f64 {
            self.0 = self.0.wrapping_add(0x9e3779b97f4a7c15);
            let mut z = self.0;
            z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
            z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
            z ^= z >> 31;
            (z >> 11) as f64 / (1u64 << 53) as f64
        }
    }

    /// Bounded probe window inside a possibly unbounded domain.
    fn probe_window(f: &TestFunction) -> (f64, f64) {
        let lo = f.domain.0.max(-3.0);
        let hi = f.domain.1.min(6.0);
        let span = hi - lo;
        (lo + 0.05 * span, hi - 0.05 * span)
    }

    #[test]
    fn derivatives_match_finite_differences() {
        for f in register_builtins() {
            let (lo, hi) = probe_window(&f);
            let mut rng = SplitMix(0x5eed + f.name.len() as u64);
            for _ in 0..64 {
                let x = lo + (hi - lo) * rng.next_f64();
                let h = 1e-6 * x.abs().max(1.0);
                let fd = (f.eval(x + h) - f.eval(x - h)) / (2.0 * h);
                let d = f.deriv(x);
                assert!(
                    (fd - d).abs() <= 1e-6 * d.abs().max(1.0),
                    "{}: derivative mismatch at x={x}: analytic {d}, finite difference {fd}",
                    f.name
                );
            }
        }
    }

    /// Midpoint probe: g((x+y)/2) <= (g(x)+g(y))/2 everywhere on a grid.
    fn midpoint_convex(g: impl Fn(f64) -> f64, lo: f64, hi: f64) -> bool {
        let n = 33;
        let pts: Vec<f64> = (0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect();
        for (i, &x) in pts.iter().enumerate() {
            for &y in &pts[i + 1..] {
                let lhs = g(0.5 * (x + y));
                let rhs = 0.5 * (g(x) + g(y));
                let scale = lhs.abs().max(rhs.abs()).max(1.0);
                if lhs > rhs + 1e-9 * scale {
                    return false;
                }
            }
        }
        true
    }

    #[test]
    fn claimed_flags_pass_midpoint_probes() {
        for f in register_builtins() {
            let (lo, hi) = probe_window(&f);
            let name = &f.name;
            let fc = f.clone();
            if f.flags.f_convex {
                assert!(midpoint_convex(|x| fc.eval(x), lo, hi), "{name}: f_convex claim fails");
            }
            if f.flags.f_concave {
                assert!(midpoint_convex(|x| -fc.eval(x), lo, hi), "{name}: f_concave claim fails");
            }
            if f.flags.abs_fprime_convex {
                assert!(
                    midpoint_convex(|x| fc.deriv(x).abs(), lo, hi),
                    "{name}: abs_fprime_convex claim fails"
                );
            }
            if f.flags.abs_fprime_concave {
                assert!(
                    midpoint_convex(|x| -fc.deriv(x).abs(), lo, hi),
                    "{name}: abs_fprime_concave claim fails"
                );
            }
            for q in [1.0, 1.5, 2.0, 3.0] {
                if f.q_convex.is_some_and(|r| r.contains(q)) {
                    assert!(
                        midpoint_convex(|x| fc.deriv(x).abs().powf(q), lo, hi),
                        "{name}: |f'|^q convex claim fails at q={q}"
                    );
                }
                if f.q_concave.is_some_and(|r| r.contains(q)) {
                    assert!(
                        midpoint_convex(|x| -fc.deriv(x).abs().powf(q), lo, hi),
                        "{name}: |f'|^q concave claim fails at q={q}"
                    );
                }
            }
        }
    }

    #[test]
    fn lookup_finds_builtins_and_reports_unknowns() {
        assert_eq!(lookup("quadratic").unwrap().name, "quadratic");
        assert!(lookup("exp").unwrap().flags.f_convex);
        let err = lookup("nope").unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("nope") && msg.contains("quadratic") && msg.contains("sine"));
    }

    #[test]
    fn interval_admission_respects_domains() {
        let xlogx = lookup("xlogx").unwrap();
        assert!(xlogx.admits_interval(2.0, 5.0));
        assert!(!xlogx.admits_interval(0.0, 1.0));
        let sine = lookup("sine").unwrap();
        assert!(sine.admits_interval(0.0, 1.0));
        assert!(!sine.admits_interval(2.0, 5.0));
        let quad = lookup("quadratic").unwrap();
        assert!(quad.admits_interval(-1.0, 2.0));
    }

    #[test]
    fn combinators_transform_values_and_derivatives() {
        let q = lookup("quadratic").unwrap();
        let scaled = q.scaled(3.0);
        assert_eq!(scaled.eval(2.0), 12.0);
        assert_eq!(scaled.deriv(2.0), 12.0);

        let shifted = q.shifted(1.0);
        assert_eq!(shifted.eval(3.0), 4.0);
        assert_eq!(shifted.deriv(3.0), 4.0);

        let reflected = q.reflected(0.0, 1.0);
        assert_eq!(reflected.eval(0.25), 0.5625); // (0.75)^2
        assert_eq!(reflected.deriv(0.25), -1.5);

        let e = lookup("exp").unwrap();
        let combo = TestFunction::linear_combination(2.0, &q, -1.0, &e);
        assert_eq!(combo.eval(0.0), -1.0);
        assert_eq!(combo.deriv(0.0), -1.0);

        let neg = q.scaled(-1.0);
        assert!(neg.flags.f_concave && !neg.flags.f_convex);
    }
}
