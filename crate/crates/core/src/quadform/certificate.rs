use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::Signed;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::family::primes_7_mod_8;
use super::local::{hilbert_symbol, invariants_of, local_coefficients, LocalInvariants, SquareClass};
use super::{DiagonalForm, QuadError};
use crate::arith::{is_square_f, is_square_q, LocalElement, LocalPlace};
use crate::Sqrt2Int;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairSymbol {
    pub i: usize,
    pub j: usize,
    pub symbol: i8,
}

/// Every quantity behind the local invariants of one form at one place.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalTable {
    pub coeffs: Vec<LocalElement>,
    pub pairs: Vec<PairSymbol>,
    pub invariants: LocalInvariants,
}

impl LocalTable {
    fn build(q: &DiagonalForm, place: &LocalPlace) -> Result<Self, QuadError> {
        let coeffs = local_coefficients(q, place)?;
        let mut pairs = Vec::with_capacity(coeffs.len() * (coeffs.len() - 1) / 2);
        for i in 0..coeffs.len() {
            for j in i + 1..coeffs.len() {
                pairs.push(PairSymbol { i, j, symbol: hilbert_symbol(coeffs[i], coeffs[j], place.p) });
            }
        }
        let invariants = invariants_of(&coeffs, place.p);
        debug_assert_eq!(invariants.hasse, pairs.iter().map(|s| s.symbol).product::<i8>());
        Ok(LocalTable { coeffs, pairs, invariants })
    }
}

/// Invariants of `lambda * other` against the target, for one square class.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScaledRow {
    pub class: SquareClass,
    pub lambda: u64,
    pub table: LocalTable,
    pub disc_mismatch: bool,
    pub hasse_mismatch: bool,
}

impl ScaledRow {
    pub fn mismatches(&self) -> bool {
        self.disc_mismatch || self.hasse_mismatch
    }
}

/// The same comparison with the roles of the two forms exchanged.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SwappedCheck {
    pub target: LocalTable,
    pub rows: Vec<ScaledRow>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CandidateTest {
    pub value: String,
    pub is_square: bool,
}

/// Record of the square test on `x = u + v sqrt2`: norm, its root, and the
/// rational candidates for `s^2` in a root `s + t sqrt2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SquareTranscript {
    pub value: Sqrt2Int,
    pub norm: String,
    pub norm_root: Option<String>,
    pub candidates: Vec<CandidateTest>,
    pub is_square: bool,
}

impl SquareTranscript {
    pub fn record(x: &Sqrt2Int) -> Self {
        let norm = x.norm();
        let norm_root = (!norm.is_negative())
            .then(|| norm.sqrt())
            .filter(|w| w * w == norm);
        let half = |n: BigInt| Ratio::new(n, BigInt::from(2));
        let candidates: Vec<Ratio<BigInt>> = match &norm_root {
            None => vec![],
            Some(_) if x.v == BigInt::from(0) => vec![Ratio::from_integer(x.u.clone()), half(x.u.clone())],
            Some(w) => vec![half(&x.u + w), half(&x.u - w)],
        };
        let candidates: Vec<CandidateTest> = candidates
            .into_iter()
            .map(|c| CandidateTest { value: c.to_string(), is_square: is_square_q(&c) })
            .collect();
        let is_square = norm_root.is_some() && candidates.iter().any(|c| c.is_square);
        SquareTranscript {
            value: x.clone(),
            norm: norm.to_string(),
            norm_root: norm_root.map(|w| w.to_string()),
            candidates,
            is_square,
        }
    }
}

/// Witness that `q` and `lambda * q'` are non-isometric for every `lambda`
/// in `Q(sqrt 2)^*`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum NoncommCertificate {
    /// Odd `n`: the discriminant class is a similarity invariant, and the
    /// two discriminants differ by a non-square.
    OddDiscWitness {
        n: usize,
        form: DiagonalForm,
        other: DiagonalForm,
        disc: Sqrt2Int,
        disc_other: Sqrt2Int,
        transcript: SquareTranscript,
    },
    /// Even `n`: at one split place, `lambda * other` differs from `form` in
    /// discriminant class or Hasse-Witt invariant for all four square
    /// classes of `lambda`.
    LocalWitness {
        n: usize,
        form: DiagonalForm,
        other: DiagonalForm,
        place: LocalPlace,
        target: LocalTable,
        rows: Vec<ScaledRow>,
        swapped: SwappedCheck,
    },
}

impl NoncommCertificate {
    pub fn kind(&self) -> &'static str {
        match self {
            NoncommCertificate::OddDiscWitness { .. } => "OddDiscWitness",
            NoncommCertificate::LocalWitness { .. } => "LocalWitness",
        }
    }

    pub fn place(&self) -> Option<&LocalPlace> {
        match self {
            NoncommCertificate::LocalWitness { place, .. } => Some(place),
            NoncommCertificate::OddDiscWitness { .. } => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum CertifyOutcome {
    Ok { certificate: NoncommCertificate },
    NoWitness { reason: String, places_tried: usize, max_prime: u64 },
}

impl CertifyOutcome {
    pub fn certificate(&self) -> Option<&NoncommCertificate> {
        match self {
            CertifyOutcome::Ok { certificate } => Some(certificate),
            CertifyOutcome::NoWitness { .. } => None,
        }
    }
}

fn scaled_rows(target: &LocalTable, other: &DiagonalForm, place: &LocalPlace) -> Result<Vec<ScaledRow>, QuadError> {
    SquareClass::ALL
        .iter()
        .map(|&class| {
            let lambda = class.representative(place);
            let scaled = other.scale(&Sqrt2Int::from_int(BigInt::from(lambda)));
            let table = LocalTable::build(&scaled, place)?;
            Ok(ScaledRow {
                class,
                lambda,
                disc_mismatch: !target.invariants.disc_matches(&table.invariants),
                hasse_mismatch: target.invariants.hasse != table.invariants.hasse,
                table,
            })
        })
        .collect()
}

fn check_pair(q: &DiagonalForm, q_other: &DiagonalForm) -> Result<(), QuadError> {
    if q.n() != q_other.n() {
        return Err(QuadError::DimensionMismatch(q.n(), q_other.n()));
    }
    for f in [q, q_other] {
        if !f.is_admissible() {
            return Err(QuadError::NotAdmissible(f.to_string()));
        }
    }
    Ok(())
}

/// Local comparison at one given place; `Some` iff all four scaled rows
/// mismatch.
pub fn certify_at_place(
    q: &DiagonalForm,
    q_other: &DiagonalForm,
    place: &LocalPlace,
) -> Result<Option<NoncommCertificate>, QuadError> {
    check_pair(q, q_other)?;
    let target = LocalTable::build(q, place)?;
    let rows = scaled_rows(&target, q_other, place)?;
    if !rows.iter().all(ScaledRow::mismatches) {
        return Ok(None);
    }
    let swapped_target = LocalTable::build(q_other, place)?;
    let swapped_rows = scaled_rows(&swapped_target, q, place)?;
    Ok(Some(NoncommCertificate::LocalWitness {
        n: q.n(),
        form: q.clone(),
        other: q_other.clone(),
        place: *place,
        target,
        rows,
        swapped: SwappedCheck { target: swapped_target, rows: swapped_rows },
    }))
}

/// Search for a certificate that `q` and `lambda * q_other` are never
/// isometric. Odd `n` uses the discriminant; even `n` scans split primes
/// `p = 7 (mod 8)` up to `max_prime` and keeps the smallest that works.
/// `NoWitness` is an absence of certificate, not a proof of commensurability.
pub fn certify_noncommensurable(
    q: &DiagonalForm,
    q_other: &DiagonalForm,
    max_prime: u64,
) -> Result<CertifyOutcome, QuadError> {
    check_pair(q, q_other)?;
    if q.n() % 2 == 1 {
        let disc = q.discriminant();
        let disc_other = q_other.discriminant();
        let transcript = SquareTranscript::record(&(&disc * &disc_other));
        if transcript.is_square {
            return Ok(CertifyOutcome::NoWitness {
                reason: "discriminants agree up to squares".into(),
                places_tried: 0,
                max_prime,
            });
        }
        let certificate = NoncommCertificate::OddDiscWitness { n: q.n(), form: q.clone(), other: q_other.clone(), disc, disc_other, transcript };
        return Ok(CertifyOutcome::Ok { certificate });
    }

    let primes: Vec<u64> = primes_7_mod_8().take_while(|&p| p <= max_prime).collect();
    let found = primes
        .par_iter()
        .map(|&p| LocalPlace::new(p).map_err(QuadError::from).and_then(|pl| certify_at_place(q, q_other, &pl)))
        .find_map_first(|r| r.transpose());
    match found {
        Some(Ok(certificate)) => Ok(CertifyOutcome::Ok { certificate }),
        Some(Err(e)) => Err(e),
        None => Ok(CertifyOutcome::NoWitness {
            reason: format!("no place p = 7 (mod 8) up to {max_prime} separates the forms"),
            places_tried: primes.len(),
            max_prime,
        }),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("recomputed {0} does not match the certificate")]
    Mismatch(&'static str),
    #[error("certificate does not witness non-isometry: {0}")]
    NotAWitness(String),
    #[error(transparent)]
    Invalid(#[from] QuadError),
}

/// Re-check a certificate from its forms alone, recomputing every symbol.
pub fn verify_certificate(cert: &NoncommCertificate) -> Result<(), VerifyError> {
    match cert {
        NoncommCertificate::OddDiscWitness { n, form, other, disc, disc_other, transcript } => {
            check_pair(form, other)?;
            if form.n() != *n {
                return Err(VerifyError::Mismatch("n"));
            }
            if n % 2 == 0 {
                return Err(VerifyError::NotAWitness("discriminant witness needs odd n".into()));
            }
            if form.discriminant() != *disc || other.discriminant() != *disc_other {
                return Err(VerifyError::Mismatch("discriminants"));
            }
            let product = disc * disc_other;
            if SquareTranscript::record(&product) != *transcript {
                return Err(VerifyError::Mismatch("square test transcript"));
            }
            if transcript.is_square || is_square_f(&product).map_err(QuadError::from)? {
                return Err(VerifyError::NotAWitness("discriminant ratio is a square".into()));
            }
            Ok(())
        }
        NoncommCertificate::LocalWitness { n, form, other, place, target, rows, swapped } => {
            check_pair(form, other)?;
            if form.n() != *n {
                return Err(VerifyError::Mismatch("n"));
            }
            let fresh = LocalPlace::with_root(place.prime(), place.sqrt2_root).map_err(QuadError::from)?;
            if fresh != *place {
                return Err(VerifyError::Mismatch("place"));
            }
            let fresh_target = LocalTable::build(form, place)?;
            if fresh_target != *target {
                return Err(VerifyError::Mismatch("target table"));
            }
            if scaled_rows(&fresh_target, other, place)? != *rows {
                return Err(VerifyError::Mismatch("scaled rows"));
            }
            let swapped_target = LocalTable::build(other, place)?;
            if swapped_target != swapped.target || scaled_rows(&swapped_target, form, place)? != swapped.rows {
                return Err(VerifyError::Mismatch("swapped check"));
            }
            if rows.len() != 4 || !rows.iter().all(ScaledRow::mismatches) {
                return Err(VerifyError::NotAWitness("some square class matches".into()));
            }
            if !swapped.rows.iter().all(ScaledRow::mismatches) {
                return Err(VerifyError::NotAWitness("swapped comparison has a matching class".into()));
            }
            Ok(())
        }
    }
}
