//! Numerical verification of Bullen-type inequalities for fractional
//! integral operators with nonsingular-kernel normalizations.
//!
//! The crate provides, bottom-up:
//!
//! * [`special`] — Gamma-family functions and a three-regime Mittag-Leffler
//!   evaluator for `E_alpha(z)` with `alpha` in (0, 1];
//! * [`quad`] — adaptive Gauss-Legendre quadrature with explicit handling of
//!   endpoint power singularities `(x-c)^(alpha-1)`;
//! * [`corpus`] — a registry of test functions carrying certified convexity
//!   flags, each flag re-verified numerically by the module's own tests;
//! * [`operators`] — Riemann-Liouville, Atangana-Baleanu, and
//!   Caputo-Fabrizio integrals and derivatives on an interval;
//! * [`identity`] — the four-term Atangana-Baleanu identity linking those
//!   integrals to a weighted integral of `f'`;
//! * [`bounds`] — six Bullen-type bounds on that four-term expression, their
//!   classical corollary forms at order one, and the Hermite-Hadamard and
//!   Bullen inequalities they collapse to.
//!
//! The commonly used types are re-exported at the crate root.

pub mod bounds;
pub mod corpus;
pub mod identity;
pub mod operators;
pub mod quad;
pub mod special;

pub use bounds::{
    verify_bound, BoundInstance, BoundReport, BoundStatus, BoundsError, Theorem, TOL_SLACK,
};
pub use corpus::{
    lookup, register_builtins, ClosureFunction, CorpusError, FunctionFlags, QRange, RealFunction,
    TestFunction,
};
pub use identity::{verify_lemma, LemmaInstance, LemmaReport};
pub use operators::{FractionalOrder, Normalization, OperatorError, OperatorPoint};
pub use quad::{QuadError, QuadSpec, Quadrature, SingularKernel};
pub use special::{mittag_leffler, MlParams, SpecialError};
