//! Exact computation of the price of envy-freeness for allocating a small
//! number of indivisible items among agents with normalized additive
//! utilities.
//!
//! All numeric work is generic over an exact [`Scalar`]. The crate root
//! exposes concrete aliases: [`Rational`] (arbitrary precision, the default
//! everywhere a result is reported) and the fixed-width [`Rational64`] and
//! [`Rational128`] for hot loops whose magnitudes are known to be small.

pub mod bounds;
pub mod error;
pub mod exhaustive;
pub mod explore;
pub mod io;
pub mod matching;
pub mod matrix;
pub mod oracle;
pub mod scalar;
pub mod solver;
pub mod structure;
pub mod welfare;

pub use error::{Error, Result};
pub use matrix::{Allocation, UtilityMatrix};
pub use scalar::Scalar;
pub use solver::{SearchKind, SolveMode, SolveOptions, StructuredWitness};
pub use welfare::WelfareReport;

/// Arbitrary-precision exact fraction.
pub type Rational = num_rational::BigRational;
/// Fixed-width exact fraction; overflow panics under checked builds.
pub type Rational64 = num_rational::Ratio<i64>;
/// Fixed-width exact fraction with a wider integer.
pub type Rational128 = num_rational::Ratio<i128>;

pub type Matrix = UtilityMatrix<Rational>;
pub type Witness = StructuredWitness<Rational>;
