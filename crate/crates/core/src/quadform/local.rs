use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::{DiagonalForm, QuadError};
use crate::arith::{valuation_f, LocalElement, LocalPlace, OddPrime};
use crate::Sqrt2Int;

fn signed_pow(base: i8, exp: i64) -> i8 {
    if exp.rem_euclid(2) == 0 {
        1
    } else {
        base
    }
}

/// Hilbert symbol `(a, b)` over `Q_p`, `p` odd:
/// for `a = p^alpha u`, `b = p^beta w` with units `u`, `w`,
/// `(a, b) = (-1)^(alpha beta (p-1)/2) (u|p)^beta (w|p)^alpha`.
pub fn hilbert_symbol(a: LocalElement, b: LocalElement, p: OddPrime) -> i8 {
    let sign = signed_pow(p.minus_one_symbol(), a.val * b.val);
    sign * signed_pow(a.unit_symbol(p), b.val) * signed_pow(b.unit_symbol(p), a.val)
}

/// Square-class invariants of a form over `Q_p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LocalInvariants {
    pub dim: usize,
    pub disc_val_parity: u8,
    pub disc_unit_qr: i8,
    pub hasse: i8,
}

impl LocalInvariants {
    pub fn disc_matches(&self, other: &LocalInvariants) -> bool {
        self.disc_val_parity == other.disc_val_parity && self.disc_unit_qr == other.disc_unit_qr
    }
}

/// The four classes of `Q_p^* / (Q_p^*)^2` for odd `p`: `{1, u, p, up}` with
/// `u` the smallest positive non-residue.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SquareClass {
    #[serde(rename = "1")]
    One,
    #[serde(rename = "u")]
    U,
    #[serde(rename = "p")]
    P,
    #[serde(rename = "up")]
    UP,
}

impl SquareClass {
    pub const ALL: [SquareClass; 4] = [SquareClass::One, SquareClass::U, SquareClass::P, SquareClass::UP];

    /// Positive integer representative at the given place.
    pub fn representative(self, place: &LocalPlace) -> u64 {
        match self {
            SquareClass::One => 1,
            SquareClass::U => place.nonresidue,
            SquareClass::P => place.prime(),
            SquareClass::UP => place.nonresidue * place.prime(),
        }
    }
}

impl fmt::Display for SquareClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SquareClass::One => "1",
            SquareClass::U => "u",
            SquareClass::P => "p",
            SquareClass::UP => "up",
        })
    }
}

/// Images of the coefficients in `Q_p`.
pub fn local_coefficients(q: &DiagonalForm, place: &LocalPlace) -> Result<Vec<LocalElement>, QuadError> {
    q.coeffs().iter().map(|c| valuation_f(c, place).map_err(QuadError::from)).collect()
}

fn hasse_of(coeffs: &[LocalElement], p: OddPrime) -> i8 {
    let mut eps = 1;
    for (i, a) in coeffs.iter().enumerate() {
        for b in &coeffs[i + 1..] {
            eps *= hilbert_symbol(*a, *b, p);
        }
    }
    eps
}

fn disc_of(coeffs: &[LocalElement], p: OddPrime) -> (u8, i8) {
    let d = coeffs.iter().fold(LocalElement::one(), |acc, c| acc.mul(*c, p));
    (d.val.rem_euclid(2) as u8, d.unit_symbol(p))
}

pub(crate) fn invariants_of(coeffs: &[LocalElement], p: OddPrime) -> LocalInvariants {
    let (disc_val_parity, disc_unit_qr) = disc_of(coeffs, p);
    LocalInvariants { dim: coeffs.len(), disc_val_parity, disc_unit_qr, hasse: hasse_of(coeffs, p) }
}

/// Hasse-Witt invariant: product of `(a_i, a_j)` over `i < j`.
pub fn hasse_witt(q: &DiagonalForm, place: &LocalPlace) -> Result<i8, QuadError> {
    Ok(hasse_of(&local_coefficients(q, place)?, place.p))
}

/// Square class of the plain product of the coefficients, as
/// (valuation mod 2, Legendre symbol of the unit part).
pub fn disc_class(q: &DiagonalForm, place: &LocalPlace) -> Result<(u8, i8), QuadError> {
    Ok(disc_of(&local_coefficients(q, place)?, place.p))
}

pub fn local_invariants(q: &DiagonalForm, place: &LocalPlace) -> Result<LocalInvariants, QuadError> {
    Ok(invariants_of(&local_coefficients(q, place)?, place.p))
}

/// Invariants of `lambda * q` for a representative `lambda` of the class,
/// recomputed from the scaled coefficients.
pub fn scaled_invariants(
    q: &DiagonalForm,
    place: &LocalPlace,
    class: SquareClass,
) -> Result<LocalInvariants, QuadError> {
    let lambda = Sqrt2Int::from_int(BigInt::from(class.representative(place)));
    local_invariants(&q.scale(&lambda), place)
}
