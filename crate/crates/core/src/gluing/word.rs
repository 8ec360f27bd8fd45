use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::GluingError;

/// A gluing code `alpha in {1..r}^(Z/mZ)`: piece `alpha_i` sits at position
/// `i` of the cycle.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CyclicWord {
    letters: Vec<u32>,
    r: u32,
}

impl CyclicWord {
    pub fn new(letters: Vec<u32>, r: u32) -> Result<Self, GluingError> {
        if r == 0 {
            return Err(GluingError::EmptyAlphabet);
        }
        if letters.is_empty() {
            return Err(GluingError::Empty);
        }
        if let Some((position, &letter)) = letters.iter().enumerate().find(|(_, &l)| l == 0 || l > r) {
            return Err(GluingError::LetterOutOfRange { letter, position, r });
        }
        Ok(CyclicWord { letters, r })
    }

    /// Alphabet size taken as the largest letter present.
    pub fn from_letters(letters: Vec<u32>) -> Result<Self, GluingError> {
        let r = letters.iter().copied().max().unwrap_or(0).max(1);
        Self::new(letters, r)
    }

    pub fn letters(&self) -> &[u32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn with_alphabet(&self, r: u32) -> Result<Self, GluingError> {
        Self::new(self.letters.clone(), r)
    }

    /// `rotate(w, k)_i = w_{i+k}`.
    pub fn rotate(&self, k: usize) -> Self {
        let m = self.len();
        let k = k % m;
        let mut letters = Vec::with_capacity(m);
        letters.extend_from_slice(&self.letters[k..]);
        letters.extend_from_slice(&self.letters[..k]);
        CyclicWord { letters, r: self.r }
    }

    /// Smallest `d > 0` with `rotate(w, d) = w`; always divides `m`.
    pub fn period(&self) -> usize {
        let m = self.len();
        let border = failure_function(&self.letters)[m];
        let p = m - border;
        if m % p == 0 {
            p
        } else {
            m
        }
    }

    /// Multiplicity of each letter `1..=r`.
    pub fn content(&self) -> Vec<u64> {
        let mut counts = vec![0u64; self.r as usize];
        for &l in &self.letters {
            counts[l as usize - 1] += 1;
        }
        counts
    }
}

impl FromStr for CyclicWord {
    type Err = GluingError;
    fn from_str(s: &str) -> Result<Self, GluingError> {
        let letters = s
            .split(',')
            .map(|t| t.trim().parse::<u32>().ok().filter(|&l| l > 0))
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| GluingError::Parse(s.to_string()))?;
        Self::from_letters(letters)
    }
}

impl fmt::Display for CyclicWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.letters.iter().map(u32::to_string).collect();
        f.write_str(&parts.join(","))
    }
}

// KMP border table: fail[i] = length of the longest proper border of s[..i].
fn failure_function(s: &[u32]) -> Vec<usize> {
    let mut fail = vec![0usize; s.len() + 1];
    let mut k = 0;
    for i in 1..s.len() {
        while k > 0 && s[i] != s[k] {
            k = fail[k];
        }
        if s[i] == s[k] {
            k += 1;
        }
        fail[i + 1] = k;
    }
    fail
}

/// Booth's algorithm: start of the lexicographically least rotation, in
/// linear time.
fn least_rotation(s: &[u32]) -> usize {
    let n = s.len();
    let mut f: Vec<isize> = vec![-1; 2 * n];
    let mut k = 0usize;
    for j in 1..2 * n {
        let sj = s[j % n];
        let mut i = f[j - k - 1];
        while i != -1 && sj != s[(k + i as usize + 1) % n] {
            if sj < s[(k + i as usize + 1) % n] {
                k = j - i as usize - 1;
            }
            i = f[i as usize];
        }
        if i == -1 && sj != s[k % n] {
            if sj < s[k % n] {
                k = j;
            }
            f[j - k] = -1;
        } else {
            f[j - k] = i + 1;
        }
    }
    k % n
}

/// Least rotation of `w` and a shift `k` with `rotate(w, k)` equal to it.
pub fn canonical_rotation(w: &CyclicWord) -> (CyclicWord, usize) {
    let k = least_rotation(&w.letters) % w.period();
    (w.rotate(k), k)
}

/// Rotation-class test for equal-length words: `Some(p)` with
/// `beta = rotate(alpha, p)` (smallest such `p`) when the glued manifolds
/// are commensurable, `None` otherwise.
pub fn same_class(alpha: &CyclicWord, beta: &CyclicWord) -> Result<Option<usize>, GluingError> {
    if alpha.len() != beta.len() {
        return Err(GluingError::LengthMismatch(alpha.len(), beta.len()));
    }
    if alpha.r != beta.r {
        return Err(GluingError::AlphabetMismatch(alpha.r, beta.r));
    }
    let (ca, sa) = canonical_rotation(alpha);
    let (cb, sb) = canonical_rotation(beta);
    if ca != cb {
        return Ok(None);
    }
    let period = alpha.period();
    Ok(Some((sa + period - sb % period) % period))
}

/// Shortest `g` with `w = g^(m/|g|)`.
pub fn primitive_root(w: &CyclicWord) -> CyclicWord {
    CyclicWord { letters: w.letters[..w.period()].to_vec(), r: w.r }
}

/// Experimental cross-length comparator: primitive roots equal up to
/// rotation. Periodic words cover their root, so `true` implies
/// commensurability; the converse is not established and `false` proves
/// nothing.
pub fn same_primitive_class(alpha: &CyclicWord, beta: &CyclicWord) -> bool {
    let (ra, rb) = (primitive_root(alpha), primitive_root(beta));
    ra.len() == rb.len() && canonical_rotation(&ra).0.letters == canonical_rotation(&rb).0.letters
}

/// Symmetries of the colored `m`-cycle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StabilizerReport {
    pub rotation_order: usize,
    pub reflection_exists: bool,
    pub dihedral_order: usize,
}

/// Count the rotations and reflections of `Z/mZ` that preserve the word by
/// checking all `2m` of them. Reflections are reported as combinatorial
/// symmetries only.
pub fn dihedral_stabilizer(w: &CyclicWord) -> StabilizerReport {
    let m = w.len();
    let s = &w.letters;
    let rotation_order = (0..m).filter(|&k| (0..m).all(|i| s[(i + k) % m] == s[i])).count();
    let reflection_exists = (0..m).any(|k| (0..m).all(|i| s[(k + m - i) % m] == s[i]));
    StabilizerReport {
        rotation_order,
        reflection_exists,
        dihedral_order: rotation_order * if reflection_exists { 2 } else { 1 },
    }
}

/// Upper bound on the isometry group of the glued manifold: the dihedral
/// stabilizer times a bound on the isometries of a single piece.
pub fn isometry_upper_bound(w: &CyclicWord, piece_bound: u64) -> u64 {
    assert!(piece_bound > 0, "piece bound must be positive");
    dihedral_stabilizer(w).dihedral_order as u64 * piece_bound
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(s: &str) -> CyclicWord {
        s.parse().unwrap()
    }

    fn brute_least(s: &CyclicWord) -> CyclicWord {
        (0..s.len()).map(|k| s.rotate(k)).min().unwrap()
    }

    #[test]
    fn parse_and_display() {
        assert_eq!(w("2,1,1").letters(), &[2, 1, 1]);
        assert_eq!(w(" 1, 3 ").r(), 3);
        assert_eq!(w("2,1,1").to_string(), "2,1,1");
        assert!(matches!("1,,2".parse::<CyclicWord>(), Err(GluingError::Parse(_))));
        assert!(matches!("1,0".parse::<CyclicWord>(), Err(GluingError::Parse(_))));
        assert!(matches!("a".parse::<CyclicWord>(), Err(GluingError::Parse(_))));
        assert_eq!(CyclicWord::new(vec![], 2), Err(GluingError::Empty));
        assert!(matches!(CyclicWord::new(vec![1, 3], 2), Err(GluingError::LetterOutOfRange { letter: 3, .. })));
    }

    #[test]
    fn canonical_examples() {
        assert_eq!(canonical_rotation(&w("2,1,1")), (w("1,1,2"), 1));
        assert_eq!(canonical_rotation(&w("1,2,1,2")), (w("1,2,1,2"), 0));
        assert_eq!(canonical_rotation(&w("2,1,2,1")), (w("1,2,1,2"), 1));
        assert_eq!(canonical_rotation(&w("3")), (w("3"), 0));
    }

    #[test]
    fn same_class_examples() {
        assert_eq!(same_class(&w("1,2,2,1"), &w("1,1,2,2")), Ok(Some(3)));
        assert_eq!(same_class(&w("1,1,2,2"), &w("1,2,1,2")), Ok(None));
        for k in 1..=4u32 {
            for k2 in 1..=4u32 {
                let a = CyclicWord::new(vec![k; 5], 4).unwrap();
                let b = CyclicWord::new(vec![k2; 5], 4).unwrap();
                assert_eq!(same_class(&a, &b).unwrap().is_some(), k == k2);
            }
        }
        assert_eq!(same_class(&w("1,2"), &w("1,2,2")), Err(GluingError::LengthMismatch(2, 3)));
        assert_eq!(
            same_class(&w("1,1"), &w("2,2")),
            Err(GluingError::AlphabetMismatch(1, 2))
        );
    }

    #[test]
    fn primitive_roots() {
        assert_eq!(primitive_root(&w("1,2,1,2")).letters(), &[1, 2]);
        assert_eq!(primitive_root(&w("1,2,2")).letters(), &[1, 2, 2]);
        assert_eq!(primitive_root(&w("1,1,1")).letters(), &[1]);
        assert!(same_primitive_class(&w("1,2"), &w("2,1,2,1")));
        assert!(!same_primitive_class(&w("1,1,2"), &w("1,2,1,2")));
    }

    fn brute_stabilizer(word: &CyclicWord) -> (usize, usize) {
        let m = word.len();
        let s = word.letters();
        let mut rotations = 0;
        let mut reflections = 0;
        for k in 0..m {
            if (0..m).all(|i| s[(i + k) % m] == s[i]) {
                rotations += 1;
            }
            if (0..m).all(|i| s[(k + m - i) % m] == s[i]) {
                reflections += 1;
            }
        }
        (rotations, reflections)
    }

    #[test]
    fn stabilizer_examples() {
        assert_eq!(brute_stabilizer(&w("2,1,1")), (1, 1));
        assert_eq!(brute_stabilizer(&w("1,2,1,2")), (2, 2));
        assert_eq!(
            dihedral_stabilizer(&w("1,1,1")),
            StabilizerReport { rotation_order: 3, reflection_exists: true, dihedral_order: 6 }
        );
        assert_eq!(
            dihedral_stabilizer(&w("2,1,1")),
            StabilizerReport { rotation_order: 1, reflection_exists: true, dihedral_order: 2 }
        );
        assert_eq!(
            dihedral_stabilizer(&w("1,2,1,2")),
            StabilizerReport { rotation_order: 2, reflection_exists: true, dihedral_order: 4 }
        );
        assert_eq!(dihedral_stabilizer(&w("2,1,1,1")).dihedral_order, 2);
    }

    #[test]
    fn isometry_bounds() {
        assert_eq!(isometry_upper_bound(&w("2,1,1,1,1,1"), 7), 14);
        assert_eq!(isometry_upper_bound(&CyclicWord::new(vec![1; 9], 1).unwrap(), 7), 2 * 9 * 7);
        // 1,1,2,1,2,2 has no rotation or reflection symmetry
        assert_eq!(brute_stabilizer(&w("1,1,2,1,2,2")), (1, 0));
        assert_eq!(isometry_upper_bound(&w("1,1,2,1,2,2"), 7), 7);
    }

    fn arb_word() -> impl Strategy<Value = CyclicWord> {
        (1u32..4).prop_flat_map(|r| {
            prop::collection::vec(1..=r, 1..24).prop_map(move |l| CyclicWord::new(l, r).unwrap())
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn booth_matches_brute_force(word in arb_word()) {
            let (c, k) = canonical_rotation(&word);
            prop_assert_eq!(&c, &brute_least(&word));
            prop_assert_eq!(word.rotate(k), c.clone());
            prop_assert_eq!(canonical_rotation(&c), (c, 0));
        }

        #[test]
        fn rotation_invariance(word in arb_word(), k in 0usize..64) {
            let rotated = word.rotate(k);
            prop_assert_eq!(canonical_rotation(&rotated).0, canonical_rotation(&word).0);
            let p = same_class(&word, &rotated).unwrap().unwrap();
            prop_assert_eq!(word.rotate(p), rotated);
            prop_assert_eq!(p, k % word.len() % word.period());
        }

        #[test]
        fn equivalence_relation(a in arb_word(), k1 in 0usize..30, k2 in 0usize..30, flip in 0usize..30) {
            let mut c_letters = a.letters().to_vec();
            let i = flip % c_letters.len();
            c_letters[i] = c_letters[i] % a.r() + 1;
            let c = CyclicWord::new(c_letters, a.r()).unwrap().rotate(k2);
            let b = a.rotate(k1);
            // reflexive
            prop_assert_eq!(same_class(&a, &a).unwrap(), Some(0));
            // symmetric, inverse shift
            let ab = same_class(&a, &b).unwrap().unwrap();
            let ba = same_class(&b, &a).unwrap().unwrap();
            prop_assert_eq!((ab + ba) % a.period(), 0);
            // transitive, shifts add
            let bc = same_class(&b, &c).unwrap();
            let ac = same_class(&a, &c).unwrap();
            prop_assert_eq!(bc.is_some(), ac.is_some());
            if let (Some(bc), Some(ac)) = (bc, ac) {
                prop_assert_eq!((ab + bc) % a.period(), ac);
            }
        }

        #[test]
        fn stabilizer_accounting(word in arb_word()) {
            let rep = dihedral_stabilizer(&word);
            prop_assert_eq!(rep.rotation_order * word.period(), word.len());
            prop_assert_eq!((2 * word.len()) % rep.dihedral_order, 0);
            let (rot, refl) = brute_stabilizer(&word);
            prop_assert_eq!(rep.rotation_order, rot);
            prop_assert_eq!(rep.reflection_exists, refl > 0);
        }
    }
}
