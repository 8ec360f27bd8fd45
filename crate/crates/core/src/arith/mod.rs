//! Exact integer, rational and `Z[sqrt 2]` arithmetic plus the `p`-adic
//! primitives (valuations, Legendre symbols, Hensel lifting, square tests)
//! that the local invariants are built on.

mod modular;
mod padic;
mod sqrt2;
mod squares;

pub use modular::{is_prime, legendre, legendre_checked, pow_mod, smallest_nonresidue, sqrt_mod_p, OddPrime};
pub use padic::{
    hensel_lift_sqrt2, unit_part, valuation_f, valuation_int, valuation_q, LocalElement, LocalPlace,
};
pub use sqrt2::{Embedding, Sqrt2};
pub use squares::{is_square_f, is_square_q, sqrt_f, sqrt_q};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("valuation of zero undefined")]
    ZeroValuation,
    #[error("{0} is not an odd prime")]
    NotOddPrime(String),
    #[error("2 is not a square modulo {0}, so {0} does not split in Q(sqrt 2)")]
    NotSplit(u64),
    #[error("square test of zero is undefined")]
    ZeroSquareTest,
}
