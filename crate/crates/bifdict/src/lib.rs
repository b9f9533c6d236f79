//! Exact arithmetic for the bifurcation set of alpha-continued fraction
//! transformations and the kneading bifurcation set of unimodal maps, together
//! with the order-reversing correspondence between them.
//!
//! Everything is computed exactly on eventually periodic expansions: values
//! are arbitrary-precision rationals or quadratic surds, limits that are
//! provably irrational are reported as rational interval enclosures of
//! requested width, and no floating point enters any decision.

pub mod binary;
pub mod cascades;
pub mod cf;
pub mod enclosure;
pub mod error;
pub mod gaps;
pub mod lamination;
pub mod matching;
pub mod membership;
pub mod minkowski;
pub mod spectra;
pub mod surd;
pub mod univoque;

pub use binary::{encode_kneading, BinaryExpansion};
pub use cf::ContinuedFraction;
pub use enclosure::Enclosure;
pub use error::{Error, Result};
pub use surd::{ExactNumber, QuadraticSurd};

use num_bigint::BigInt;
use num_rational::BigRational;

/// Shorthand for building a rational from machine integers.
pub fn rat(numer: i64, denom: i64) -> BigRational {
    BigRational::new(BigInt::from(numer), BigInt::from(denom))
}
