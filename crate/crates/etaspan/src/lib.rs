//! Exact arithmetic for Dedekind eta-quotients on Gamma_0(N).
//!
//! The crate answers, with exact integer and rational arithmetic only:
//! - which eta-quotients `prod_{delta | N} eta(delta z)^{r_delta}` are
//!   holomorphic modular forms of a given weight and level (Newman's
//!   congruence conditions plus Ligozat's cusp-order formula);
//! - exhaustive enumeration and counting of all such quotients, driven by a
//!   sharp bound on `sum |r_delta|`;
//! - whether they span `M_k(Gamma_0(N))` and whether the graded ring of
//!   modular forms is generated by eta-quotients (exact rank over Q);
//! - recognition of an integer q-expansion as `c * (eta-quotient)`;
//! - the structure of the rational cuspidal subgroup of `J_0(2^k)` from the
//!   lattice of weight-0 eta-quotient units (Smith normal form).
//!
//! The q-series kernel in [`qseries`] is generic over its coefficient scalar;
//! the concrete instantiations used throughout are aliased below.

pub mod arith;
pub mod enumerate;
pub mod etaquot;



pub mod error;

pub mod gamma0;
pub mod linalg;

pub mod modp;
pub mod qseries;


pub use error::{Error, RecognitionError, Result};

/// Exact rational scalar used for q-expansions and cusp orders.
pub type Rational = num_rational::BigRational;

/// Arbitrary-precision integer scalar.
pub type Integer = num_bigint::BigInt;

/// Truncated Laurent series with exact rational coefficients.
pub type QSeries = qseries::Series<Rational>;

/// Truncated Laurent series with integer coefficients (eta products have
/// unit leading coefficients, so inversion stays integral).
pub type ZSeries = qseries::Series<Integer>;






