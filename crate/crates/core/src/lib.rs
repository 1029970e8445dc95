//! Exact computer algebra for truncated Hahn / Levi-Civita series.
//!
//! Elements are finite sums `sum a_k t^r_k` with rational exponents `r_k`
//! and coefficients in `Q(l1, ..., l9)`, the field generated by the iterated
//! logarithms of an infinitely large quantity, together with an explicit
//! truncation order. The indeterminate `t` is a positive infinitesimal
//! scale; the canonical valuation is the least exponent.
//!
//! Modules:
//! - [`logfield`]: the coefficient field, ordered by log-monomial dominance.
//! - [`hahn_series`]: series arithmetic, valuation, order, inverse and powers.
//! - [`valuation`]: ultrametric distance, balls, and nested-ball intervals.
//! - [`embedding`]: quasi-standard part, substitution `A ↦ A(h)` and its
//!   inverse re-expansion.
//! - [`exec`] / [`batch`]: data-parallel batch evaluation (rayon, behind the
//!   `parallel` feature).

pub mod batch;
pub mod embedding;
pub mod error;
pub mod exec;
pub mod hahn_series;
pub mod logfield;
pub mod valuation;

#[cfg(feature = "testing")]
pub mod testing;

/// Arbitrary-precision rational; every exponent and base coefficient.
pub type Rational = num::BigRational;

pub use embedding::{decompose, extract, quasi_st, substitute, ExpansionResult, Scale};
pub use error::{Error, Result};
pub use hahn_series::{HahnSeries, SeriesOrdering, Tau, Term, ValuationValue};
pub use logfield::{dominance_compare, LogExponentVector, LogFieldElement, LogMonomial, LogPolynomial, TOWER_DEPTH};
pub use valuation::{
    ball_contains, ball_relation, dist, interval_between, isosceles_check, separating_point, Ball, BallKind,
    BallRelation, Interval, UltraDistance,
};
