//! Scalar traits shared by the generic arithmetic.

use std::fmt::{Debug, Display};

use num_integer::{Integer, Roots};
use num_traits::{Float, FloatConst, FromPrimitive, Signed, ToPrimitive};

/// Signed integer scalar: `i64`, `i128` or [`num_bigint::BigInt`].
///
/// Nothing here checks for overflow; the fixed-width instances are only
/// appropriate when every intermediate value (norms in particular) fits.
pub trait Int:
    Integer + Signed + Roots + Clone + FromPrimitive + ToPrimitive + Debug + Display + Send + Sync
{
    fn of_u64(x: u64) -> Self {
        <Self as FromPrimitive>::from_u64(x).expect("u64 does not fit the scalar type")
    }
}

impl<T> Int for T where
    T: Integer + Signed + Roots + Clone + FromPrimitive + ToPrimitive + Debug + Display + Send + Sync
{
}

/// Floating-point scalar used for log-space asymptotics (`f32` or `f64`).
pub trait Real: Float + FloatConst + FromPrimitive + Debug + Send + Sync {}

impl<T> Real for T where T: Float + FloatConst + FromPrimitive + Debug + Send + Sync {}
