//! Exact arithmetic over `Q(sqrt 2)` and its split `p`-adic completions,
//! local invariants of diagonal quadratic forms, cyclic gluing codes with
//! their rotation classes, and exact census tables of fixed-content
//! necklaces.
//!
//! The arithmetic layer is generic over the integer scalar ([`scalar::Int`]);
//! everything above it works with the arbitrary-precision aliases exported
//! here.

pub mod arith;
pub mod census;
pub mod cli;
pub mod gluing;
pub mod quadform;
pub mod scalar;

pub use num_bigint::BigInt;

/// `u + v*sqrt(2)` with arbitrary-precision coordinates.
pub type Sqrt2Int = arith::Sqrt2<BigInt>;

/// Reduced arbitrary-precision rational.
pub type Rational = num_rational::BigRational;

/// Machine-word variant, handy when coefficients are known to be small.
pub type Sqrt2I64 = arith::Sqrt2<i64>;

pub use arith::{LocalElement, LocalPlace, OddPrime};
pub use census::{CensusRow, VolumeVector};
pub use gluing::{CyclicWord, StabilizerReport};
pub use quadform::{DiagonalForm, LocalInvariants, NoncommCertificate};
