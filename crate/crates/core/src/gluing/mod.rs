//! Cyclic gluing codes: words over `{1, ..., r}` indexed by `Z/mZ`, their
//! rotation classes (the commensurability classes of the glued manifolds),
//! dihedral stabilizers, and exact counts of fixed-content necklaces.

mod necklace;
mod word;

pub use necklace::{
    brute_force_class_count, enumerate_classes, multinomial, multinomial_bound, necklace_count,
    EnumerationLimits,
};
pub use word::{
    canonical_rotation, dihedral_stabilizer, isometry_upper_bound, primitive_root, same_class,
    same_primitive_class, CyclicWord, StabilizerReport,
};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GluingError {
    #[error("gluing word must be nonempty")]
    Empty,
    #[error("alphabet size must be at least 1")]
    EmptyAlphabet,
    #[error("letter {letter} at position {position} is outside 1..={r}")]
    LetterOutOfRange { letter: u32, position: usize, r: u32 },
    #[error("cannot parse word {0:?}: expected comma-separated positive integers")]
    Parse(String),
    #[error("words have different lengths ({0} vs {1}); rotation classes are only compared at equal length")]
    LengthMismatch(usize, usize),
    #[error("words use different alphabet sizes ({0} vs {1})")]
    AlphabetMismatch(u32, u32),
    #[error("enumeration of r = {r}, m = {m} exceeds the cap ({limit})")]
    CapExceeded { r: u32, m: u32, limit: String },
}
