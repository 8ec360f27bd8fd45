use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::ArithError;
use crate::scalar::Int;

/// `base^exp mod modulus` by square-and-multiply; result in `[0, modulus)`.
pub fn pow_mod<T: Int>(base: &T, exp: &T, modulus: &T) -> T {
    assert!(modulus.is_positive(), "modulus must be positive");
    assert!(!exp.is_negative(), "negative exponent");
    let two = T::one() + T::one();
    let mut result = T::one().mod_floor(modulus);
    let mut b = base.mod_floor(modulus);
    let mut e = exp.clone();
    while !e.is_zero() {
        if e.is_odd() {
            result = (result * b.clone()).mod_floor(modulus);
        }
        b = (b.clone() * b).mod_floor(modulus);
        e = e / two.clone();
    }
    result
}

/// Legendre symbol `(a | p)` for an odd prime `p` by Euler's criterion.
/// Primality of `p` is not checked here; see [`legendre_checked`].
pub fn legendre<T: Int>(a: &T, p: &T) -> i8 {
    let a = a.mod_floor(p);
    if a.is_zero() {
        return 0;
    }
    let half = (p.clone() - T::one()) / (T::one() + T::one());
    let r = pow_mod(&a, &half, p);
    if r.is_one() {
        1
    } else {
        debug_assert_eq!(r, p.clone() - T::one(), "modulus is not prime");
        -1
    }
}

/// [`legendre`] with the modulus validated as an odd prime.
pub fn legendre_checked<T: Int>(a: &T, p: u64) -> Result<i8, ArithError> {
    let p = OddPrime::new(p)?;
    Ok(legendre(a, &T::of_u64(p.get())))
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// A validated odd rational prime.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "u64", into = "u64")]
pub struct OddPrime(u64);

impl OddPrime {
    pub fn new(p: u64) -> Result<Self, ArithError> {
        if p % 2 == 1 && is_prime(p) {
            Ok(OddPrime(p))
        } else {
            Err(ArithError::NotOddPrime(p.to_string()))
        }
    }

    pub fn get(self) -> u64 {
        self.0
    }

    pub fn to_big(self) -> BigInt {
        BigInt::from(self.0)
    }

    /// `(-1)^((p-1)/2)`, i.e. `(-1 | p)`.
    pub fn minus_one_symbol(self) -> i8 {
        if self.0 % 4 == 1 {
            1
        } else {
            -1
        }
    }
}

impl TryFrom<u64> for OddPrime {
    type Error = ArithError;
    fn try_from(p: u64) -> Result<Self, ArithError> {
        OddPrime::new(p)
    }
}

impl From<OddPrime> for u64 {
    fn from(p: OddPrime) -> u64 {
        p.0
    }
}

impl fmt::Display for OddPrime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Smallest positive quadratic non-residue modulo an odd prime.
pub fn smallest_nonresidue(p: OddPrime) -> u64 {
    let pp = p.get();
    (2..pp)
        .find(|&a| legendre(&(a as i64), &(pp as i64)) == -1)
        .expect("every odd prime has a non-residue")
}

/// Smallest `c` in `[1, p-1]` with `c^2 = a (mod p)`, or `None` when `a` is
/// not a nonzero square mod `p`. Tonelli-Shanks.
pub fn sqrt_mod_p<T: Int>(a: &T, p: &T) -> Option<T> {
    if legendre(a, p) != 1 {
        return None;
    }
    let one = T::one();
    let two = one.clone() + one.clone();
    let a = a.mod_floor(p);

    let mut q = p.clone() - one.clone();
    let mut s = 0u32;
    while q.is_even() {
        q = q / two.clone();
        s += 1;
    }
    let mut z = two.clone();
    while legendre(&z, p) != -1 {
        z = z + one.clone();
    }

    let mut m = s;
    let mut c = pow_mod(&z, &q, p);
    let mut t = pow_mod(&a, &q, p);
    let mut r = pow_mod(&a, &((q + one.clone()) / two.clone()), p);
    while !t.is_one() {
        let mut i = 0u32;
        let mut t2 = t.clone();
        while !t2.is_one() {
            t2 = (t2.clone() * t2).mod_floor(p);
            i += 1;
        }
        let mut b = c.clone();
        for _ in 0..(m - i - 1) {
            b = (b.clone() * b).mod_floor(p);
        }
        m = i;
        c = (b.clone() * b.clone()).mod_floor(p);
        t = (t * c.clone()).mod_floor(p);
        r = (r * b).mod_floor(p);
    }
    let other = p.clone() - r.clone();
    Some(if other < r { other } else { r })
}
