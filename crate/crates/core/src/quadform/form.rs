use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::QuadError;
use crate::arith::Embedding;
use crate::Sqrt2Int;

/// `a_1 x_1^2 + ... + a_{n+1} x_{n+1}^2` with nonzero `a_i` in `Z[sqrt 2]`,
/// defining a lattice acting on hyperbolic `n`-space.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "FormRepr")]
pub struct DiagonalForm {
    n: usize,
    coeffs: Vec<Sqrt2Int>,
}

#[derive(Deserialize)]
struct FormRepr {
    n: usize,
    coeffs: Vec<Sqrt2Int>,
}

impl TryFrom<FormRepr> for DiagonalForm {
    type Error = QuadError;
    fn try_from(r: FormRepr) -> Result<Self, QuadError> {
        DiagonalForm::new(r.n, r.coeffs)
    }
}

/// Number of negative coefficients under `sqrt2 -> +sqrt2` and `sqrt2 -> -sqrt2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Signatures {
    pub plus: usize,
    pub minus: usize,
}

impl DiagonalForm {
    pub fn new(n: usize, coeffs: Vec<Sqrt2Int>) -> Result<Self, QuadError> {
        if n < 2 {
            return Err(QuadError::DimensionTooSmall(n));
        }
        if coeffs.len() != n + 1 {
            return Err(QuadError::WrongLength { n, got: coeffs.len() });
        }
        if let Some(i) = coeffs.iter().position(|c| c.is_zero()) {
            return Err(QuadError::ZeroCoefficient(i));
        }
        Ok(DiagonalForm { n, coeffs })
    }

    /// `a x_1^2 + x_2^2 + ... + x_n^2 - sqrt2 x_{n+1}^2`.
    pub fn q_a(n: usize, a: Sqrt2Int) -> Result<Self, QuadError> {
        let mut coeffs = Vec::with_capacity(n + 1);
        coeffs.push(a);
        coeffs.extend(std::iter::repeat(Sqrt2Int::one()).take(n.saturating_sub(1)));
        coeffs.push(Sqrt2Int::new(BigInt::zero(), -BigInt::one()));
        Self::new(n, coeffs)
    }

    /// [`DiagonalForm::q_a`] for a rational integer `a`.
    pub fn q_int(n: usize, a: i64) -> Result<Self, QuadError> {
        Self::q_a(n, Sqrt2Int::from_int(BigInt::from(a)))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Sqrt2Int] {
        &self.coeffs
    }

    /// Plain product of the coefficients; only its square class is meaningful.
    pub fn discriminant(&self) -> Sqrt2Int {
        self.coeffs.iter().fold(Sqrt2Int::one(), |acc, c| acc * c.clone())
    }

    pub fn scale(&self, lambda: &Sqrt2Int) -> Self {
        assert!(!lambda.is_zero(), "scaling by zero");
        DiagonalForm {
            n: self.n,
            coeffs: self.coeffs.iter().map(|c| c * lambda).collect(),
        }
    }

    pub fn negate(&self) -> Self {
        DiagonalForm { n: self.n, coeffs: self.coeffs.iter().map(|c| -c.clone()).collect() }
    }

    pub fn permute(&self, order: &[usize]) -> Self {
        assert_eq!(order.len(), self.coeffs.len());
        DiagonalForm { n: self.n, coeffs: order.iter().map(|&i| self.coeffs[i].clone()).collect() }
    }

    /// Replace one coefficient by `a_i * s^2`.
    pub fn scale_coefficient_by_square(&self, i: usize, s: &Sqrt2Int) -> Self {
        let mut out = self.clone();
        out.coeffs[i] = &(&out.coeffs[i] * s) * s;
        assert!(!out.coeffs[i].is_zero(), "square of zero");
        out
    }

    pub fn signatures(&self) -> Signatures {
        let neg = |e: Embedding| {
            self.coeffs
                .iter()
                .filter(|c| {
                    let s = c.sign_at(e);
                    assert!(s != Ordering::Equal, "nonzero coefficient vanished under a real embedding");
                    s == Ordering::Less
                })
                .count()
        };
        Signatures { plus: neg(Embedding::Plus), minus: neg(Embedding::Minus) }
    }

    /// Signature `(1, n)` at exactly one real place and definite at the other.
    pub fn is_admissible(&self) -> bool {
        let s = self.signatures();
        matches!((s.plus, s.minus), (1, 0) | (0, 1))
    }

    /// Sufficient condition for anisotropy over `Q(sqrt 2)`: definite under
    /// some real embedding. `false` means no certificate, not isotropy.
    pub fn is_anisotropic_certified(&self) -> bool {
        let s = self.signatures();
        let d = self.dim();
        [s.plus, s.minus].iter().any(|&neg| neg == 0 || neg == d)
    }
}

impl fmt::Display for DiagonalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| format!("({c})x{}^2", i + 1))
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s2(u: i64, v: i64) -> Sqrt2Int {
        Sqrt2Int::new(BigInt::from(u), BigInt::from(v))
    }

    fn all_ones(n: usize) -> DiagonalForm {
        DiagonalForm::new(n, vec![s2(1, 0); n + 1]).unwrap()
    }

    #[test]
    fn constructor_validation() {
        assert_eq!(DiagonalForm::q_int(1, 7), Err(QuadError::DimensionTooSmall(1)));
        assert_eq!(
            DiagonalForm::new(3, vec![s2(1, 0); 3]),
            Err(QuadError::WrongLength { n: 3, got: 3 })
        );
        assert_eq!(
            DiagonalForm::new(2, vec![s2(1, 0), s2(0, 0), s2(1, 0)]),
            Err(QuadError::ZeroCoefficient(1))
        );
        let q7 = DiagonalForm::q_int(4, 7).unwrap();
        assert_eq!(q7.coeffs(), &[s2(7, 0), s2(1, 0), s2(1, 0), s2(1, 0), s2(0, -1)]);
    }

    #[test]
    fn signature_examples() {
        let q7 = DiagonalForm::q_int(4, 7).unwrap();
        assert_eq!(q7.signatures(), Signatures { plus: 1, minus: 0 });
        assert_eq!(all_ones(4).signatures(), Signatures { plus: 0, minus: 0 });
        assert_eq!(q7.negate().signatures(), Signatures { plus: 4, minus: 5 });
    }

    #[test]
    fn admissibility_examples() {
        let q7 = DiagonalForm::q_int(4, 7).unwrap();
        assert!(q7.is_admissible());
        assert!(!all_ones(4).is_admissible());
        // +sqrt2 in the last slot is the Galois conjugate of q_7: the
        // indefinite place moves to sqrt2 -> -sqrt2
        let mut coeffs = q7.coeffs().to_vec();
        coeffs[4] = s2(0, 1);
        let conj = DiagonalForm::new(4, coeffs).unwrap();
        assert_eq!(conj.signatures(), Signatures { plus: 0, minus: 1 });
        assert!(conj.is_admissible());
        let mut coeffs = q7.coeffs().to_vec();
        coeffs[4] = s2(1, 0);
        assert!(!DiagonalForm::new(4, coeffs).unwrap().is_admissible());
        assert!(!q7.negate().is_admissible());
    }

    #[test]
    fn anisotropy_examples() {
        let q7 = DiagonalForm::q_int(4, 7).unwrap();
        assert!(q7.is_anisotropic_certified());
        let mut lorentz = vec![s2(1, 0); 5];
        lorentz[4] = s2(-1, 0);
        assert!(!DiagonalForm::new(4, lorentz).unwrap().is_anisotropic_certified());
        assert!(q7.negate().is_anisotropic_certified());
    }

    #[test]
    fn json_shape() {
        let q = DiagonalForm::q_int(2, 3).unwrap();
        let s = serde_json::to_string(&q).unwrap();
        assert_eq!(
            s,
            r#"{"n":2,"coeffs":[{"u":"3","v":"0"},{"u":"1","v":"0"},{"u":"0","v":"-1"}]}"#
        );
        assert_eq!(serde_json::from_str::<DiagonalForm>(&s).unwrap(), q);
        let bad = r#"{"n":2,"coeffs":[{"u":"0","v":"0"},{"u":"1","v":"0"},{"u":"0","v":"-1"}]}"#;
        assert!(serde_json::from_str::<DiagonalForm>(bad).is_err());
    }
}
