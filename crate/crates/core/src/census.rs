//! Volume bookkeeping for glued manifolds and exact census tables: the
//! number `a_m` of equal-volume rotation classes against `2^m`, against the
//! orbit-size lower bound, and against its Stirling asymptotic.

use std::collections::BTreeMap;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize, Serializer};
use thiserror::Error;

use crate::gluing::{multinomial_bound, necklace_count, CyclicWord};
use crate::scalar::Real;
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CensusError {
    #[error("no volume given for piece {0}")]
    MissingVolume(u32),
    #[error("volume of piece {0} must be positive")]
    NonPositiveVolume(u32),
    #[error("invalid volume file: {0}")]
    Parse(String),
    #[error("the constant K must be positive")]
    NonPositiveK,
    #[error("alphabet size must be at least 1")]
    EmptyAlphabet,
}

/// Numeric volumes `v_k` of the pieces, keyed by letter.
pub type PieceVolumes = BTreeMap<u32, Rational>;

/// Parse `{"1": "3/2", "2": "5"}`. Rationals are strings so no float
/// parsing is involved.
pub fn parse_piece_volumes(json: &str) -> Result<PieceVolumes, CensusError> {
    let raw: BTreeMap<String, String> =
        serde_json::from_str(json).map_err(|e| CensusError::Parse(e.to_string()))?;
    let mut out = PieceVolumes::new();
    for (k, v) in raw {
        let letter: u32 = k.trim().parse().map_err(|_| CensusError::Parse(format!("bad piece label {k:?}")))?;
        let value = parse_rational(&v).ok_or_else(|| CensusError::Parse(format!("bad rational {v:?}")))?;
        if !value.is_positive() {
            return Err(CensusError::NonPositiveVolume(letter));
        }
        out.insert(letter, value);
    }
    Ok(out)
}

pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).ok()?;
            let d = BigInt::from_str(d.trim()).ok()?;
            (!d.is_zero()).then(|| BigRational::new(n, d))
        }
        None => Some(BigRational::from_integer(BigInt::from_str(s).ok()?)),
    }
}

/// Letter multiplicities of a gluing word. The volume of the glued
/// manifold is `sum_k counts[k] * v_k`, so equal content means equal volume.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct VolumeVector {
    pub counts: BTreeMap<u32, u64>,
}

impl VolumeVector {
    pub fn uniform(r: u32, m: u64) -> Self {
        VolumeVector { counts: (1..=r).map(|k| (k, m)).collect() }
    }

    pub fn pieces(&self) -> u64 {
        self.counts.values().sum()
    }

    pub fn numeric(&self, volumes: &PieceVolumes) -> Result<Rational, CensusError> {
        self.counts
            .iter()
            .filter(|(_, &c)| c > 0)
            .try_fold(Rational::zero(), |acc, (k, &c)| {
                let v = volumes.get(k).ok_or(CensusError::MissingVolume(*k))?;
                Ok(acc + v * BigRational::from_integer(BigInt::from(c)))
            })
    }

    /// Formal sum such as `2*v1 + 2*v2`.
    pub fn formal(&self) -> String {
        let terms: Vec<String> = self
            .counts
            .iter()
            .filter(|(_, &c)| c > 0)
            .map(|(k, c)| if *c == 1 { format!("v{k}") } else { format!("{c}*v{k}") })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }
}

pub fn volume_of(w: &CyclicWord) -> VolumeVector {
    let counts = w
        .content()
        .into_iter()
        .enumerate()
        .filter(|(_, c)| *c > 0)
        .map(|(i, c)| (i as u32 + 1, c))
        .collect();
    VolumeVector { counts }
}

/// Natural logarithm of a big integer, exact up to the precision of `F`
/// at any magnitude.
pub fn ln_big<F: Real>(x: &BigUint) -> F {
    assert!(!x.is_zero(), "log of zero");
    let bits = x.bits();
    let shift = bits.saturating_sub(64);
    let top = (x >> shift).to_u64().expect("64 leading bits");
    F::from_u64(top).unwrap().ln() + F::from_u64(shift).unwrap() * F::LN_2()
}

/// `ln( m^-1 (2 pi m)^(-(r-1)/2) r^(rm-1) )`.
pub fn ln_asymptotic<F: Real>(r: u64, m: u64) -> F {
    let rf = F::from_u64(r).unwrap();
    let mf = F::from_u64(m).unwrap();
    let two = F::from_u8(2).unwrap();
    -mf.ln() - (rf - F::one()) / two * (two * F::PI() * mf).ln() + (rf * mf - F::one()) * rf.ln()
}

/// Limit of `ln a_m - ln_asymptotic(r, m)`: Stirling applied to
/// `(rm)!/(m!)^r` carries an extra `sqrt(r)`.
pub fn ln_stirling_gap<F: Real>(r: u64) -> F {
    F::from_u64(r).unwrap().sqrt().ln()
}

/// `x = exp(ln_x)` rendered as `d.dddddde+N` without overflowing.
pub fn format_from_ln(ln_x: f64) -> String {
    let log10 = ln_x / std::f64::consts::LN_10;
    let mut exp = log10.floor();
    let mut mant = 10f64.powf(log10 - exp);
    if mant >= 9.9999995 {
        mant /= 10.0;
        exp += 1.0;
    }
    format!("{mant:.6}e{}", exp as i64)
}

fn ser_display<T: std::fmt::Display, S: Serializer>(x: &T, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

fn ser_opt_display<T: std::fmt::Display, S: Serializer>(x: &Option<T>, s: S) -> Result<S::Ok, S::Error> {
    match x {
        Some(x) => s.serialize_str(&x.to_string()),
        None => s.serialize_none(),
    }
}

/// One line of the census at fixed `(r, m)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CensusRow {
    pub m: u64,
    #[serde(serialize_with = "ser_display")]
    pub a_m: BigUint,
    #[serde(serialize_with = "ser_display")]
    pub pow2: BigUint,
    #[serde(serialize_with = "ser_display")]
    pub multinomial_bound: Rational,
    pub asymptotic: String,
    pub ln_a_m: f64,
    pub ln_asymptotic: f64,
    /// `a_m / asymptotic`, tending to `sqrt(r)`.
    pub ratio: f64,
    pub volume: VolumeVector,
    pub volume_formal: String,
    #[serde(serialize_with = "ser_opt_display")]
    pub volume_numeric: Option<Rational>,
    #[serde(serialize_with = "ser_opt_display")]
    pub lcom_lower_bound: Option<BigUint>,
}

/// Optional numeric overlay for [`theorem_table`].
#[derive(Clone, Debug, Default)]
pub struct CensusOptions {
    pub volumes: Option<PieceVolumes>,
    /// `(K, V)` for the step function of [`lcom_lower_bound`].
    pub constants: Option<(Rational, Rational)>,
}

pub fn census_row(r: u32, m: u64, options: &CensusOptions) -> Result<CensusRow, CensusError> {
    if r == 0 {
        return Err(CensusError::EmptyAlphabet);
    }
    let a_m = necklace_count(r as u64, m);
    let ln_a_m: f64 = ln_big(&a_m);
    let ln_asym: f64 = ln_asymptotic(r as u64, m);
    let volume = VolumeVector::uniform(r, m);
    let volume_numeric = options.volumes.as_ref().map(|v| volume.numeric(v)).transpose()?;
    let lcom = match (&volume_numeric, &options.constants) {
        (Some(v), Some((k, big_v))) => Some(lcom_lower_bound(v, k, big_v)?),
        _ => None,
    };
    Ok(CensusRow {
        m,
        pow2: BigUint::one() << m,
        multinomial_bound: multinomial_bound(r as u64, m),
        asymptotic: format_from_ln(ln_asym),
        ln_a_m,
        ln_asymptotic: ln_asym,
        ratio: (ln_a_m - ln_asym).exp(),
        volume_formal: volume.formal(),
        volume,
        volume_numeric,
        lcom_lower_bound: lcom,
        a_m,
    })
}

/// Rows `m = 1..=m_max`, computed independently and assembled in order.
pub fn theorem_table(r: u32, m_max: u64, options: &CensusOptions) -> Result<Vec<CensusRow>, CensusError> {
    (1..=m_max).into_par_iter().map(|m| census_row(r, m, options)).collect()
}

/// `2^floor(v/K)` once `v >= V`, else 1.
pub fn lcom_lower_bound(v: &Rational, k: &Rational, big_v: &Rational) -> Result<BigUint, CensusError> {
    if !k.is_positive() {
        return Err(CensusError::NonPositiveK);
    }
    if v < big_v || v.is_negative() {
        return Ok(BigUint::one());
    }
    let steps = (v / k).floor().to_integer();
    let steps = steps.to_u64().expect("exponent fits in u64");
    Ok(BigUint::one() << steps)
}

/// Smallest `log2(a_m) / vol` over the upper half of the rows (by `m`): a
/// finite-range stand-in for the liminf of classes per unit volume. Small
/// `m` are excluded since `a_1 = 1` would pin the minimum at zero.
pub fn liminf_check(rows: &[CensusRow]) -> Result<Option<f64>, CensusError> {
    let m_max = rows.iter().map(|r| r.m).max().unwrap_or(0);
    let mut best: Option<f64> = None;
    for row in rows.iter().filter(|r| 2 * r.m > m_max) {
        let vol = row.volume_numeric.as_ref().ok_or(CensusError::MissingVolume(1))?;
        let q = row.ln_a_m / std::f64::consts::LN_2 / vol.to_f64().expect("finite volume");
        best = Some(best.map_or(q, |b: f64| b.min(q)));
    }
    Ok(best)
}

/// Smallest `m0` such that `a_m >= 2^m` for every row with `m >= m0`.
pub fn power_threshold(rows: &[CensusRow]) -> Option<u64> {
    let mut m0 = None;
    for row in rows.iter().rev() {
        if row.a_m >= row.pow2 {
            m0 = Some(row.m);
        } else {
            break;
        }
    }
    m0
}

pub const CSV_HEADER: &str = "m,a_m,pow2,multinomial_bound,asymptotic,ratio";

pub fn to_csv(rows: &[CensusRow]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for row in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{:.9}\n",
            row.m, row.a_m, row.pow2, row.multinomial_bound, row.asymptotic, row.ratio
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn volume_examples() {
        let v = volume_of(&"1,2,1,2".parse().unwrap());
        assert_eq!(v.counts, BTreeMap::from([(1, 2), (2, 2)]));
        assert_eq!(v.formal(), "2*v1 + 2*v2");
        let v = volume_of(&"2,1,1".parse().unwrap());
        assert_eq!(v.formal(), "2*v1 + v2");
        let w: CyclicWord = "2,1,1,3,1".parse().unwrap();
        for k in 0..w.len() {
            assert_eq!(volume_of(&w.rotate(k)), volume_of(&w));
        }
        let vols = PieceVolumes::from([(1, q(3, 2)), (2, q(5, 1))]);
        assert_eq!(volume_of(&"2,1,1".parse().unwrap()).numeric(&vols), Ok(q(8, 1)));
        assert_eq!(volume_of(&"2,3".parse().unwrap()).numeric(&vols), Err(CensusError::MissingVolume(3)));
    }

    #[test]
    fn volume_file_parsing() {
        let vols = parse_piece_volumes(r#"{"1": "3/2", "2": " 7 "}"#).unwrap();
        assert_eq!(vols[&1], q(3, 2));
        assert_eq!(vols[&2], q(7, 1));
        assert!(matches!(parse_piece_volumes(r#"{"1": "1.5"}"#), Err(CensusError::Parse(_))));
        assert!(matches!(parse_piece_volumes(r#"{"x": "1"}"#), Err(CensusError::Parse(_))));
        assert_eq!(parse_piece_volumes(r#"{"1": "-1/2"}"#), Err(CensusError::NonPositiveVolume(1)));
        assert!(matches!(parse_piece_volumes(r#"{"1": "1/0"}"#), Err(CensusError::Parse(_))));
    }

    #[test]
    fn ln_big_is_accurate() {
        let x = BigUint::from(123_456_789u64);
        assert!((ln_big::<f64>(&x) - (123_456_789f64).ln()).abs() < 1e-12);
        let big = BigUint::one() << 5000u32;
        assert!((ln_big::<f64>(&big) - 5000.0 * std::f64::consts::LN_2).abs() < 1e-9);
        assert!((ln_big::<f32>(&x) - (123_456_789f32).ln()).abs() < 1e-4);
    }

    #[test]
    fn asymptotic_in_both_float_widths() {
        let a: f64 = ln_asymptotic(2, 10);
        let b: f32 = ln_asymptotic(2, 10);
        // m^-1 (2 pi m)^-1/2 2^19
        let direct = (0.1 * (20.0 * std::f64::consts::PI).powf(-0.5) * 2f64.powi(19)).ln();
        assert!((a - direct).abs() < 1e-12);
        assert!((b as f64 - direct).abs() < 1e-4);
    }

    #[test]
    fn row_examples() {
        let row = census_row(2, 2, &CensusOptions::default()).unwrap();
        assert_eq!(row.a_m, BigUint::from(2u32));
        assert_eq!(row.multinomial_bound, q(3, 2));
        assert_eq!(row.pow2, BigUint::from(4u32));
        let table = theorem_table(1, 6, &CensusOptions::default()).unwrap();
        assert!(table.iter().all(|r| r.a_m.is_one()));
        assert!(theorem_table(2, 0, &CensusOptions::default()).unwrap().is_empty());
    }

    #[test]
    fn threshold_is_six() {
        let table = theorem_table(2, 64, &CensusOptions::default()).unwrap();
        assert_eq!(power_threshold(&table), Some(6));
        assert!(table[4].a_m < table[4].pow2);
    }

    #[test]
    fn step_function() {
        let k = q(3, 1);
        let v0 = q(5, 1);
        assert_eq!(lcom_lower_bound(&q(6, 1), &k, &v0), Ok(BigUint::from(4u32)));
        assert_eq!(lcom_lower_bound(&q(4, 1), &k, &v0), Ok(BigUint::one()));
        assert_eq!(lcom_lower_bound(&q(1, 1), &q(0, 1), &v0), Err(CensusError::NonPositiveK));
        let mut prev = BigUint::zero();
        for i in 0..100 {
            let b = lcom_lower_bound(&q(i, 7), &q(2, 3), &q(1, 1)).unwrap();
            assert!(b >= prev);
            prev = b;
        }
    }

    #[test]
    fn liminf_examples() {
        let unit = CensusOptions { volumes: Some(PieceVolumes::from([(1, q(1, 1)), (2, q(1, 1))])), constants: None };
        let rows: Vec<CensusRow> = (6..=64).map(|m| census_row(2, m, &unit).unwrap()).collect();
        let quotient = liminf_check(&rows).unwrap().unwrap();
        assert!(quotient >= 0.25);
        let single = liminf_check(&rows[..1]).unwrap().unwrap();
        assert!((single - rows[0].ln_a_m / std::f64::consts::LN_2 / 12.0).abs() < 1e-12);
        let small = CensusOptions { volumes: Some(PieceVolumes::from([(1, q(1, 2)), (2, q(1, 2))])), constants: None };
        let rows_small: Vec<CensusRow> = (6..=64).map(|m| census_row(2, m, &small).unwrap()).collect();
        assert!(liminf_check(&rows_small).unwrap().unwrap() > quotient);
        assert!(liminf_check(&theorem_table(2, 3, &CensusOptions::default()).unwrap()).is_err());
        // a_1 = 1 lies in the lower half and does not pin the estimate to 0
        assert!(liminf_check(&theorem_table(2, 20, &unit).unwrap()).unwrap().unwrap() > 0.0);
    }

    #[test]
    fn csv_layout() {
        let csv = to_csv(&theorem_table(2, 3, &CensusOptions::default()).unwrap());
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], CSV_HEADER);
        assert!(lines[2].starts_with("2,2,4,3/2,"));
        assert_eq!(lines.len(), 4);
    }

    #[test]
    fn exp_formatting() {
        assert_eq!(format_from_ln(1000f64.ln()), "1.000000e3");
        assert_eq!(format_from_ln(0.5f64.ln()), "5.000000e-1");
    }
}
