//! Diagonal quadratic forms over `Q(sqrt 2)`: admissibility, local
//! invariants at split odd primes, and certificates that two forms stay
//! non-isometric after every rescaling.

mod certificate;
mod family;
mod form;
mod local;

pub use certificate::{
    certify_at_place, certify_noncommensurable, verify_certificate, CandidateTest, CertifyOutcome,
    LocalTable, NoncommCertificate, PairSymbol, ScaledRow, SquareTranscript, SwappedCheck,
    VerifyError,
};
pub use family::{generate_family, primes_7_mod_8};
pub use form::{DiagonalForm, Signatures};
pub use local::{
    disc_class, hasse_witt, hilbert_symbol, local_coefficients, local_invariants, scaled_invariants,
    LocalInvariants, SquareClass,
};

use thiserror::Error;

use crate::arith::ArithError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuadError {
    #[error("hyperbolic dimension must be at least 2, got {0}")]
    DimensionTooSmall(usize),
    #[error("form of dimension n = {n} needs {} coefficients, got {got}", n + 1)]
    WrongLength { n: usize, got: usize },
    #[error("coefficient {0} is zero")]
    ZeroCoefficient(usize),
    #[error("forms have different dimensions ({0} vs {1})")]
    DimensionMismatch(usize, usize),
    #[error("form is not admissible: {0}")]
    NotAdmissible(String),
    #[error(transparent)]
    Arith(#[from] ArithError),
}
