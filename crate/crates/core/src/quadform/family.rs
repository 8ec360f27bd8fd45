use num_bigint::BigInt;

use super::{DiagonalForm, QuadError};
use crate::arith::{is_prime, is_square_f};
use crate::Sqrt2Int;

/// Primes `p = 7 (mod 8)` in increasing order: 7, 23, 31, 47, 71, ...
pub fn primes_7_mod_8() -> impl Iterator<Item = u64> {
    (7u64..).step_by(8).filter(|&p| is_prime(p))
}

fn rational_primes() -> impl Iterator<Item = u64> {
    (2u64..).filter(|&p| is_prime(p))
}

/// `count` forms `q_a` that are pairwise non-similar over `Q(sqrt 2)`.
///
/// Even `n`: `a` runs over the primes `7 (mod 8)`. Odd `n`: `a` runs over
/// the rational primes, each checked to have no square ratio with the ones
/// already chosen.
pub fn generate_family(n: usize, count: usize) -> Result<Vec<DiagonalForm>, QuadError> {
    if n < 2 {
        return Err(QuadError::DimensionTooSmall(n));
    }
    let mut forms = Vec::with_capacity(count);
    if n % 2 == 0 {
        for p in primes_7_mod_8().take(count) {
            forms.push(DiagonalForm::q_int(n, p as i64)?);
        }
    } else {
        let mut chosen: Vec<Sqrt2Int> = Vec::with_capacity(count);
        for a in rational_primes() {
            if chosen.len() == count {
                break;
            }
            let a = Sqrt2Int::from_int(BigInt::from(a));
            let mut fresh = true;
            for b in &chosen {
                if is_square_f(&(&a * b))? {
                    fresh = false;
                    break;
                }
            }
            if fresh {
                forms.push(DiagonalForm::q_a(n, a.clone())?);
                chosen.push(a);
            }
        }
    }
    for q in &forms {
        if !q.is_admissible() || !q.is_anisotropic_certified() {
            return Err(QuadError::NotAdmissible(q.to_string()));
        }
    }
    Ok(forms)
}
