use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_traits::{One, Zero};
use serde::{de, Deserialize, Deserializer, Serialize, Serializer};

use crate::scalar::Int;

/// The element `u + v*sqrt(2)` of `Z[sqrt 2]`, the ring of integers of
/// `Q(sqrt 2)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Sqrt2<T> {
    pub u: T,
    pub v: T,
}

/// The two real embeddings of `Q(sqrt 2)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Embedding {
    /// `sqrt 2 -> +1.414...`
    Plus,
    /// `sqrt 2 -> -1.414...`
    Minus,
}

impl<T: Int> Sqrt2<T> {
    pub fn new(u: T, v: T) -> Self {
        Sqrt2 { u, v }
    }

    pub fn from_int(u: T) -> Self {
        Sqrt2 { u, v: T::zero() }
    }

    /// `sqrt 2` itself.
    pub fn sqrt2() -> Self {
        Sqrt2 { u: T::zero(), v: T::one() }
    }

    pub fn is_zero(&self) -> bool {
        self.u.is_zero() && self.v.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.v.is_zero()
    }

    pub fn conjugate(&self) -> Self {
        Sqrt2 { u: self.u.clone(), v: -self.v.clone() }
    }

    /// `u^2 - 2 v^2`.
    pub fn norm(&self) -> T {
        let two = T::one() + T::one();
        self.u.clone() * self.u.clone() - two * self.v.clone() * self.v.clone()
    }

    pub fn trace(&self) -> T {
        self.u.clone() + self.u.clone()
    }

    pub fn scale(&self, k: &T) -> Self {
        Sqrt2 { u: self.u.clone() * k.clone(), v: self.v.clone() * k.clone() }
    }

    /// Sign of the image under a real embedding, decided exactly by
    /// comparing `u^2` with `2 v^2`. Nonzero elements never map to 0.
    pub fn sign_at(&self, embedding: Embedding) -> Ordering {
        let v = match embedding {
            Embedding::Plus => self.v.clone(),
            Embedding::Minus => -self.v.clone(),
        };
        let su = self.u.signum();
        let sv = v.signum();
        if su.is_zero() && sv.is_zero() {
            return Ordering::Equal;
        }
        if !su.is_negative() && !sv.is_negative() {
            return Ordering::Greater;
        }
        if !su.is_positive() && !sv.is_positive() {
            return Ordering::Less;
        }
        // Opposite signs: the larger of |u| and sqrt2*|v| wins.
        let two = T::one() + T::one();
        let uu = self.u.clone() * self.u.clone();
        let vv = two * v.clone() * v;
        debug_assert!(uu != vv, "u^2 = 2v^2 has no nonzero integer solution");
        if uu > vv {
            if su.is_positive() {
                Ordering::Greater
            } else {
                Ordering::Less
            }
        } else if sv.is_positive() {
            Ordering::Greater
        } else {
            Ordering::Less
        }
    }

    /// Convert between integer scalars, e.g. `i64 -> BigInt`.
    pub fn convert<S: Int>(&self) -> Option<Sqrt2<S>> {
        Some(Sqrt2 {
            u: S::from_i128(self.u.to_i128()?)?,
            v: S::from_i128(self.v.to_i128()?)?,
        })
    }
}

impl<T: Int> Zero for Sqrt2<T> {
    fn zero() -> Self {
        Sqrt2 { u: T::zero(), v: T::zero() }
    }
    fn is_zero(&self) -> bool {
        Sqrt2::is_zero(self)
    }
}

impl<T: Int> One for Sqrt2<T> {
    fn one() -> Self {
        Sqrt2 { u: T::one(), v: T::zero() }
    }
}

impl<T: Int> Add for Sqrt2<T> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Sqrt2 { u: self.u + rhs.u, v: self.v + rhs.v }
    }
}

impl<T: Int> Sub for Sqrt2<T> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Sqrt2 { u: self.u - rhs.u, v: self.v - rhs.v }
    }
}

impl<T: Int> Neg for Sqrt2<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Sqrt2 { u: -self.u, v: -self.v }
    }
}

impl<T: Int> Mul for Sqrt2<T> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let two = T::one() + T::one();
        Sqrt2 {
            u: self.u.clone() * rhs.u.clone() + two * self.v.clone() * rhs.v.clone(),
            v: self.u * rhs.v + self.v * rhs.u,
        }
    }
}

impl<'a, T: Int> Mul<&'a Sqrt2<T>> for &'a Sqrt2<T> {
    type Output = Sqrt2<T>;
    fn mul(self, rhs: &'a Sqrt2<T>) -> Sqrt2<T> {
        self.clone() * rhs.clone()
    }
}

impl<T: Int> From<T> for Sqrt2<T> {
    fn from(u: T) -> Self {
        Sqrt2::from_int(u)
    }
}

impl<T: Int> fmt::Display for Sqrt2<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.u.is_zero(), self.v.is_zero()) {
            (_, true) => write!(f, "{}", self.u),
            (true, false) => write!(f, "{}*sqrt2", self.v),
            (false, false) if self.v.is_negative() => {
                write!(f, "{} - {}*sqrt2", self.u, self.v.abs())
            }
            (false, false) => write!(f, "{} + {}*sqrt2", self.u, self.v),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct Repr {
    u: String,
    v: String,
}

impl<T: Int> Serialize for Sqrt2<T> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        Repr { u: self.u.to_string(), v: self.v.to_string() }.serialize(serializer)
    }
}

impl<'de, T: Int + FromStr> Deserialize<'de> for Sqrt2<T> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = Repr::deserialize(deserializer)?;
        let parse = |s: &str| {
            s.trim()
                .parse::<T>()
                .map_err(|_| de::Error::custom(format!("invalid integer {s:?}")))
        };
        Ok(Sqrt2 { u: parse(&repr.u)?, v: parse(&repr.v)? })
    }
}
