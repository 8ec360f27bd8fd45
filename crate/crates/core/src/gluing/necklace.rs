use std::collections::HashMap;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::word::CyclicWord;
use super::GluingError;

fn factorial(n: u64) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * k)
}

fn euler_phi(mut n: u64) -> u64 {
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|d| n % d == 0).collect()
}

/// Number of words of length `rm` with each of the `r` letters exactly `m`
/// times: `(rm)! / (m!)^r`.
pub fn multinomial(r: u64, m: u64) -> BigUint {
    factorial(r * m) / num_traits::pow(factorial(m), r as usize)
}

/// `(rm)! / ((m!)^r rm)`, the lower bound obtained by dividing the word
/// count by the largest possible orbit size.
pub fn multinomial_bound(r: u64, m: u64) -> BigRational {
    assert!(r >= 1 && m >= 1);
    BigRational::new(BigInt::from(multinomial(r, m)), BigInt::from(r * m))
}

/// Number of rotation classes of words of length `rm` containing each of
/// `1..=r` exactly `m` times, by Burnside's lemma:
/// `(1/rm) sum_{d | m} phi(d) (rm/d)! / ((m/d)!)^r`.
pub fn necklace_count(r: u64, m: u64) -> BigUint {
    assert!(r >= 1 && m >= 1, "r and m must be positive");
    let total: BigUint = divisors(m)
        .into_iter()
        .map(|d| multinomial(r, m / d) * euler_phi(d))
        .sum();
    let (q, rem) = (total.clone() / (r * m), total % (r * m));
    debug_assert!(rem.is_zero(), "Burnside sum not divisible by the group order");
    q
}

/// Bounds on [`enumerate_classes`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumerationLimits {
    /// Largest word length `rm`.
    pub max_length: u64,
    /// Largest number of classes to materialize.
    pub max_classes: u64,
}

impl Default for EnumerationLimits {
    fn default() -> Self {
        EnumerationLimits { max_length: 20, max_classes: 2_000_000 }
    }
}

/// One canonical (least-rotation) representative per rotation class of
/// fixed-content words, in lexicographic order.
pub fn enumerate_classes(r: u32, m: u32, limits: EnumerationLimits) -> Result<Vec<CyclicWord>, GluingError> {
    let n = r as u64 * m as u64;
    if r == 0 || m == 0 {
        return Err(GluingError::EmptyAlphabet);
    }
    if n > limits.max_length {
        return Err(GluingError::CapExceeded { r, m, limit: format!("word length {n} > {}", limits.max_length) });
    }
    let count = necklace_count(r as u64, m as u64);
    if count > BigUint::from(limits.max_classes) {
        return Err(GluingError::CapExceeded { r, m, limit: format!("{count} classes > {}", limits.max_classes) });
    }

    // Fixed-content FKM recursion: prenecklaces with the prescribed content,
    // kept when their length is a multiple of the period.
    struct Gen {
        n: usize,
        r: u32,
        a: Vec<u32>,
        left: Vec<u32>,
        out: Vec<CyclicWord>,
    }
    impl Gen {
        fn run(&mut self, t: usize, p: usize) {
            if t > self.n {
                if self.n % p == 0 {
                    let letters = self.a[1..].to_vec();
                    self.out.push(CyclicWord::new(letters, self.r).expect("letters in range"));
                }
                return;
            }
            for j in self.a[t - p]..=self.r {
                if self.left[j as usize] == 0 {
                    continue;
                }
                self.a[t] = j;
                self.left[j as usize] -= 1;
                if j == self.a[t - p] {
                    self.run(t + 1, p);
                } else {
                    self.run(t + 1, t);
                }
                self.left[j as usize] += 1;
            }
        }
    }
    let n = n as usize;
    let mut gen = Gen { n, r, a: vec![0; n + 1], left: vec![m; r as usize + 1], out: Vec::new() };
    gen.left[0] = 0;
    gen.a[1] = 1;
    gen.left[1] -= 1;
    gen.run(2, 1);
    debug_assert_eq!(BigUint::from(gen.out.len()), count);
    Ok(gen.out)
}

/// Testing oracle: generate every fixed-content word, join each to its
/// rotation by one step with union-find, and count the components.
pub fn brute_force_class_count(r: u32, m: u32) -> u64 {
    let mut word: Vec<u32> = (1..=r).flat_map(|k| std::iter::repeat(k).take(m as usize)).collect();
    let mut index: HashMap<Vec<u32>, usize> = HashMap::new();
    let mut words = Vec::new();
    loop {
        index.insert(word.clone(), words.len());
        words.push(word.clone());
        if !next_permutation(&mut word) {
            break;
        }
    }
    let mut parent: Vec<usize> = (0..words.len()).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for (i, w) in words.iter().enumerate() {
        let mut rotated = w[1..].to_vec();
        rotated.push(w[0]);
        let j = index[&rotated];
        let (a, b) = (find(&mut parent, i), find(&mut parent, j));
        parent[a] = b;
    }
    (0..words.len()).filter(|&i| find(&mut parent, i) == i).count() as u64
}

fn next_permutation(v: &mut [u32]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
        return false;
    };
    let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).expect("pivot has a successor");
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}
