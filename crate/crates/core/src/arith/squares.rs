use num_rational::Ratio;
use num_traits::Zero;

use super::sqrt2::Sqrt2;
use super::ArithError;
use crate::scalar::Int;

fn sqrt_int<T: Int>(n: &T) -> Option<T> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (r.clone() * r.clone() == *n).then_some(r)
}

/// Nonnegative rational square root, if `x` is a rational square.
pub fn sqrt_q<T: Int>(x: &Ratio<T>) -> Option<Ratio<T>> {
    // Reduced form: x is a square iff numerator and denominator both are.
    let n = sqrt_int(x.numer())?;
    let d = sqrt_int(x.denom())?;
    Some(Ratio::new(n, d))
}

pub fn is_square_q<T: Int>(x: &Ratio<T>) -> bool {
    sqrt_q(x).is_some()
}

/// A square root of `x` in `Z[sqrt 2]` when `x` is a square in `Q(sqrt 2)`.
///
/// With `(s + t sqrt2)^2 = (s^2 + 2t^2) + 2st sqrt2`, the norm
/// `u^2 - 2v^2 = (s^2 - 2t^2)^2` must be a square `w^2`, and then one of
/// `(u + w)/2`, `(u - w)/2` equals `s^2`. When `v = 0` either `s = 0` or
/// `t = 0`, so `u` or `u/2` is a rational square.
pub fn sqrt_f<T: Int>(x: &Sqrt2<T>) -> Result<Option<Sqrt2<T>>, ArithError> {
    if x.is_zero() {
        return Err(ArithError::ZeroSquareTest);
    }
    let two = T::one() + T::one();
    let disc = x.norm();
    let Some(w) = sqrt_int(&disc) else {
        return Ok(None);
    };
    if x.v.is_zero() {
        let u = Ratio::from_integer(x.u.clone());
        if let Some(s) = sqrt_q(&u) {
            return Ok(Some(Sqrt2::new(s.to_integer(), T::zero())));
        }
        if let Some(t) = sqrt_q(&(u / Ratio::from_integer(two))) {
            return Ok(Some(Sqrt2::new(T::zero(), t.to_integer())));
        }
        return Ok(None);
    }
    for cand in [x.u.clone() + w.clone(), x.u.clone() - w.clone()] {
        let Some(s) = sqrt_q(&Ratio::new(cand, two.clone())) else {
            continue;
        };
        if s.is_zero() {
            continue;
        }
        let t = Ratio::from_integer(x.v.clone()) / (s.clone() * Ratio::from_integer(two.clone()));
        if s.is_integer() && t.is_integer() {
            let root = Sqrt2::new(s.to_integer(), t.to_integer());
            debug_assert_eq!(root.clone() * root.clone(), *x);
            return Ok(Some(root));
        }
    }
    Ok(None)
}

/// Whether the nonzero `x` is a square in `Q(sqrt 2)`.
pub fn is_square_f<T: Int>(x: &Sqrt2<T>) -> Result<bool, ArithError> {
    Ok(sqrt_f(x)?.is_some())
}
