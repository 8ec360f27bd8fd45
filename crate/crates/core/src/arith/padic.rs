use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{Pow, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::modular::{legendre, smallest_nonresidue, sqrt_mod_p, OddPrime};
use super::ArithError;
use crate::scalar::Int;
use crate::{Rational, Sqrt2Int};

/// Exponent of `p` in the nonzero integer `x`.
pub fn valuation_int<T: Int>(x: &T, p: &T) -> Option<u32> {
    if x.is_zero() {
        return None;
    }
    let mut x = x.abs();
    let mut v = 0;
    loop {
        let (q, r) = x.div_rem(p);
        if !r.is_zero() {
            return Some(v);
        }
        x = q;
        v += 1;
    }
}

/// `v_p(x)` for a nonzero rational.
pub fn valuation_q<T: Int>(x: &Ratio<T>, p: &T) -> Result<i64, ArithError> {
    let num = valuation_int(x.numer(), p).ok_or(ArithError::ZeroValuation)?;
    let den = valuation_int(x.denom(), p).expect("reduced denominators are nonzero");
    Ok(num as i64 - den as i64)
}

/// `x / p^v_p(x)`: numerator and denominator both prime to `p`.
pub fn unit_part<T: Int>(x: &Ratio<T>, p: &T) -> Result<Ratio<T>, ArithError> {
    let v = valuation_q(x, p)?;
    let pk = num_traits::pow(p.clone(), v.unsigned_abs() as usize);
    Ok(if v >= 0 {
        x.clone() / Ratio::from_integer(pk)
    } else {
        x.clone() * Ratio::from_integer(pk)
    })
}

/// An element of `Q_p^*` known up to squares and beyond: its valuation and
/// the residue of its unit part mod `p` (in `[1, p-1]`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LocalElement {
    pub val: i64,
    pub unit: u64,
}

impl LocalElement {
    pub fn new(val: i64, unit: u64, p: OddPrime) -> Self {
        let unit = unit % p.get();
        assert!(unit != 0, "unit residue must be prime to p");
        LocalElement { val, unit }
    }

    pub fn one() -> Self {
        LocalElement { val: 0, unit: 1 }
    }

    pub fn mul(self, other: LocalElement, p: OddPrime) -> Self {
        let unit = (self.unit as u128 * other.unit as u128 % p.get() as u128) as u64;
        LocalElement { val: self.val + other.val, unit }
    }

    pub fn neg(self, p: OddPrime) -> Self {
        LocalElement { val: self.val, unit: p.get() - self.unit }
    }

    /// Legendre symbol of the unit part.
    pub fn unit_symbol(self, p: OddPrime) -> i8 {
        legendre(&(self.unit as i128), &(p.get() as i128))
    }

    /// Image of a nonzero rational.
    pub fn from_rational(x: &Rational, p: OddPrime) -> Result<Self, ArithError> {
        let pb = p.to_big();
        let val = valuation_q(x, &pb)?;
        let unit = unit_part(x, &pb)?;
        let den_inv = unit
            .denom()
            .extended_gcd(&pb)
            .x
            .mod_floor(&pb);
        let r = (unit.numer() * den_inv).mod_floor(&pb);
        Ok(LocalElement { val, unit: r.to_u64().expect("residue below p") })
    }
}

/// An odd rational prime split in `Q(sqrt 2)` together with the embedding
/// `Q(sqrt 2) -> Q_p` fixed by a chosen square root of 2 mod `p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LocalPlace {
    pub p: OddPrime,
    pub sqrt2_root: u64,
    pub root_is_qr: bool,
    /// Smallest positive non-residue; the `u` of the square classes `{1, u, p, up}`.
    pub nonresidue: u64,
}

impl LocalPlace {
    /// Canonical place above `p`. For `p = 7 (mod 8)` the root of 2 that is
    /// itself a square mod `p` is used (it exists and is unique there);
    /// otherwise the smaller root.
    pub fn new(p: u64) -> Result<Self, ArithError> {
        let prime = OddPrime::new(p)?;
        let small = sqrt_mod_p(&2i128, &(p as i128)).ok_or(ArithError::NotSplit(p))? as u64;
        let large = p - small;
        let root = if p % 8 == 7 && legendre(&(small as i128), &(p as i128)) != 1 {
            large
        } else {
            small
        };
        Self::with_root(prime.get(), root)
    }

    /// Place with an explicitly chosen root `c` of `c^2 = 2 (mod p)`.
    pub fn with_root(p: u64, root: u64) -> Result<Self, ArithError> {
        let prime = OddPrime::new(p)?;
        let root = root % p;
        if (root as u128 * root as u128) % p as u128 != 2 % p as u128 {
            return Err(ArithError::NotSplit(p));
        }
        Ok(LocalPlace {
            p: prime,
            sqrt2_root: root,
            root_is_qr: legendre(&(root as i128), &(p as i128)) == 1,
            nonresidue: smallest_nonresidue(prime),
        })
    }

    /// The other embedding, `sqrt 2 -> -c`.
    pub fn conjugate(&self) -> Self {
        Self::with_root(self.p.get(), self.p.get() - self.sqrt2_root).expect("p - c is also a root")
    }

    pub fn prime(&self) -> u64 {
        self.p.get()
    }

    pub fn nonresidue_element(&self) -> LocalElement {
        LocalElement { val: 0, unit: self.nonresidue }
    }

    pub fn uniformizer(&self) -> LocalElement {
        LocalElement { val: 1, unit: 1 }
    }

    pub fn embed(&self, x: &Sqrt2Int) -> Result<LocalElement, ArithError> {
        valuation_f(x, self)
    }
}

/// `c_k` with `c_k^2 = 2 (mod p^k)` and `c_k = sqrt2_root (mod p)`, by Newton
/// iteration doubling the precision each step.
pub fn hensel_lift_sqrt2(place: &LocalPlace, k: u32) -> BigInt {
    assert!(k >= 1, "precision must be positive");
    let p = place.p.to_big();
    let two = BigInt::from(2);
    let mut c = BigInt::from(place.sqrt2_root);
    let mut prec = 1u32;
    while prec < k {
        prec = (2 * prec).min(k);
        let modulus: BigInt = Pow::pow(&p, prec);
        let deriv = (&two * &c).mod_floor(&modulus);
        let inv = deriv.extended_gcd(&modulus).x;
        c = (&c - (&c * &c - &two) * inv).mod_floor(&modulus);
    }
    c.mod_floor(&Pow::pow(&p, k))
}

/// Valuation and unit residue of the image of `x` in `Q_p` under the place's
/// embedding. Computed at precision `p^B` with `B = v_p(N(x)) + 1`, enough
/// because the embedded valuation never exceeds `v_p(N(x))`.
pub fn valuation_f(x: &Sqrt2Int, place: &LocalPlace) -> Result<LocalElement, ArithError> {
    if x.is_zero() {
        return Err(ArithError::ZeroValuation);
    }
    let p = place.p.to_big();
    let norm_val = valuation_int(&x.norm(), &p).expect("nonzero elements have nonzero norm");
    let precision = norm_val + 1;
    let modulus: BigInt = Pow::pow(&p, precision);
    let root = hensel_lift_sqrt2(place, precision);
    let mut t = (&x.u + &x.v * root).mod_floor(&modulus);
    debug_assert!(!t.is_zero());
    let mut val = 0i64;
    while (&t % &p).is_zero() {
        t /= &p;
        val += 1;
    }
    let unit = t.mod_floor(&p).to_u64().expect("residue below p");
    Ok(LocalElement { val, unit })
}
