use std::fmt;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Permutation of `{1..d}` in one-line notation (stored 0-based).
///
/// The product `sigma.then(tau)` is the composite function `sigma ∘ tau`,
/// which is what makes `(i.sigma).tau = i.(sigma tau)` for the right action
/// on tuples.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Permutation {
    image: Vec<usize>,
}

impl Permutation {
    pub fn identity(d: usize) -> Self {
        Permutation { image: (0..d).collect() }
    }

    /// From 1-based one-line notation, e.g. `[2, 1, 3]`.
    pub fn from_one_line(one_line: &[usize]) -> Result<Self> {
        let d = one_line.len();
        let mut seen = vec![false; d];
        for &v in one_line {
            if v == 0 || v > d || seen[v - 1] {
                return Err(Error::InvalidParams(format!("{one_line:?} is not a permutation")));
            }
            seen[v - 1] = true;
        }
        Ok(Permutation { image: one_line.iter().map(|v| v - 1).collect() })
    }

    /// Adjacent transposition `s_j = (j, j+1)`, 1-based `j`.
    pub fn transposition(d: usize, j: usize) -> Self {
        Self::swap(d, j, j + 1)
    }

    /// Transposition of two 1-based points.
    pub fn swap(d: usize, a: usize, b: usize) -> Self {
        assert!(a >= 1 && b >= 1 && a <= d && b <= d, "transposition out of range");
        let mut image: Vec<usize> = (0..d).collect();
        image.swap(a - 1, b - 1);
        Permutation { image }
    }

    /// All of S_d, lexicographic in one-line notation.
    pub fn all(d: usize) -> Vec<Permutation> {
        (0..d).permutations(d).map(|image| Permutation { image }).collect()
    }

    pub fn degree(&self) -> usize {
        self.image.len()
    }

    /// `sigma(k)` for 0-based `k`.
    pub fn apply0(&self, k: usize) -> usize {
        self.image[k]
    }

    /// `sigma(k)` for 1-based `k`.
    pub fn apply(&self, k: usize) -> usize {
        self.image[k - 1] + 1
    }

    pub fn one_line(&self) -> Vec<usize> {
        self.image.iter().map(|v| v + 1).collect()
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.image.len()];
        for (k, &v) in self.image.iter().enumerate() {
            inv[v] = k;
        }
        Permutation { image: inv }
    }

    /// `self ∘ other`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.degree(), other.degree(), "degree mismatch");
        Permutation { image: other.image.iter().map(|&k| self.image[k]).collect() }
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(k, v)| k == *v)
    }

    /// Disjoint cycles as 1-based lists `(a, sigma(a), sigma^2(a), ...)`,
    /// fixed points included, each starting at its smallest element.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let d = self.degree();
        let mut seen = vec![false; d];
        let mut out = Vec::new();
        for start in 0..d {
            if seen[start] {
                continue;
            }
            let mut cyc = Vec::new();
            let mut k = start;
            while !seen[k] {
                seen[k] = true;
                cyc.push(k + 1);
                k = self.image[k];
            }
            out.push(cyc);
        }
        out
    }

    pub fn inversions(&self) -> usize {
        let d = self.degree();
        (0..d).flat_map(|a| (a + 1..d).map(move |b| (a, b))).filter(|&(a, b)| self.image[a] > self.image[b]).count()
    }

    /// Reduced word in adjacent transpositions (1-based `j` for `s_j`),
    /// with `self = s_{w_1} ∘ s_{w_2} ∘ ...`.
    pub fn reduced_word(&self) -> Vec<usize> {
        let mut img = self.image.clone();
        let mut word = Vec::new();
        // Bubble sort: each swap of positions j, j+1 is right multiplication by s_{j+1}.
        while let Some(j) = (0..img.len().saturating_sub(1)).find(|&j| img[j] > img[j + 1]) {
            img.swap(j, j + 1);
            word.push(j + 1);
        }
        word.reverse();
        word
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles: Vec<Vec<usize>> = self.cycles().into_iter().filter(|c| c.len() > 1).collect();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            write!(f, "({})", c.iter().map(|v| v.to_string()).join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Right action on tuples: `(t.sigma)_k = t_{sigma(k)}`.
pub fn permute<T: Clone>(t: &[T], sigma: &Permutation) -> Vec<T> {
    assert_eq!(t.len(), sigma.degree(), "tuple length differs from permutation degree");
    (0..t.len()).map(|k| t[sigma.apply0(k)].clone()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn right_action_law() {
        for d in 1..=4 {
            let t: Vec<usize> = (10..10 + d).collect();
            for s in Permutation::all(d) {
                for u in Permutation::all(d) {
                    assert_eq!(permute(&permute(&t, &s), &u), permute(&t, &s.then(&u)));
                }
            }
        }
    }

    #[test]
    fn reduced_word_rebuilds() {
        for p in Permutation::all(4) {
            let w = p.reduced_word();
            assert_eq!(w.len(), p.inversions());
            let rebuilt =
                w.iter().fold(Permutation::identity(4), |acc, &j| acc.then(&Permutation::transposition(4, j)));
            assert_eq!(rebuilt, p);
        }
    }

    #[test]
    fn cycles_and_display() {
        let p = Permutation::from_one_line(&[2, 3, 1, 4]).unwrap();
        assert_eq!(p.cycles(), vec![vec![1, 2, 3], vec![4]]);
        assert_eq!(p.to_string(), "(1 2 3)");
        assert_eq!(p.inverse().then(&p), Permutation::identity(4));
        assert!(Permutation::from_one_line(&[1, 1]).is_err());
    }
}
