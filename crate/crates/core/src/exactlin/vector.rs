use serde::{Deserialize, Serialize};

use super::scalar::Q;

/// Sparse vector: strictly increasing indices, no stored zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SparseVec {
    entries: Vec<(usize, Q)>,
}

impl SparseVec {
    pub fn new() -> Self {
        SparseVec { entries: Vec::new() }
    }

    pub fn unit(i: usize) -> Self {
        SparseVec { entries: vec![(i, Q::ONE)] }
    }

    /// Builds from arbitrary entries; duplicates are summed and zeros dropped.
    pub fn from_entries(mut entries: Vec<(usize, Q)>) -> Self {
        entries.sort_by_key(|e| e.0);
        let mut out: Vec<(usize, Q)> = Vec::with_capacity(entries.len());
        for (i, v) in entries {
            match out.last_mut() {
                Some((j, w)) if *j == i => *w += &v,
                _ => out.push((i, v)),
            }
        }
        out.retain(|(_, v)| !v.is_zero());
        SparseVec { entries: out }
    }

    /// Trusts that `entries` are sorted, distinct and nonzero.
    pub fn from_sorted_unchecked(entries: Vec<(usize, Q)>) -> Self {
        debug_assert!(entries.windows(2).all(|w| w[0].0 < w[1].0));
        debug_assert!(entries.iter().all(|e| !e.1.is_zero()));
        SparseVec { entries }
    }

    pub fn from_dense(v: &[Q]) -> Self {
        SparseVec { entries: v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (i, x.clone())).collect() }
    }

    pub fn to_dense(&self, len: usize) -> Vec<Q> {
        let mut out = vec![Q::ZERO; len];
        for (i, v) in &self.entries {
            out[*i] = v.clone();
        }
        out
    }

    pub fn entries(&self) -> &[(usize, Q)] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<(usize, Q)> {
        self.entries
    }

    pub fn iter(&self) -> impl Iterator<Item = &(usize, Q)> {
        self.entries.iter()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, i: usize) -> Q {
        match self.entries.binary_search_by_key(&i, |e| e.0) {
            Ok(k) => self.entries[k].1.clone(),
            Err(_) => Q::ZERO,
        }
    }

    pub fn first(&self) -> Option<&(usize, Q)> {
        self.entries.first()
    }

    pub fn last(&self) -> Option<&(usize, Q)> {
        self.entries.last()
    }

    pub fn max_index(&self) -> Option<usize> {
        self.entries.last().map(|e| e.0)
    }

    pub fn scale(&self, a: &Q) -> SparseVec {
        if a.is_zero() {
            return SparseVec::new();
        }
        SparseVec { entries: self.entries.iter().map(|(i, v)| (*i, v * a)).collect() }
    }

    pub fn scale_in_place(&mut self, a: &Q) {
        assert!(!a.is_zero());
        if a.is_one() {
            return;
        }
        for (_, v) in self.entries.iter_mut() {
            *v = &*v * a;
        }
    }

    /// `self + a * other`.
    pub fn axpy(&self, a: &Q, other: &SparseVec) -> SparseVec {
        if a.is_zero() {
            return self.clone();
        }
        let (x, y) = (&self.entries, &other.entries);
        let mut out = Vec::with_capacity(x.len() + y.len());
        let (mut p, mut q) = (0, 0);
        while p < x.len() || q < y.len() {
            if q == y.len() || (p < x.len() && x[p].0 < y[q].0) {
                out.push(x[p].clone());
                p += 1;
            } else if p == x.len() || y[q].0 < x[p].0 {
                out.push((y[q].0, &y[q].1 * a));
                q += 1;
            } else {
                let v = &x[p].1 + &(&y[q].1 * a);
                if !v.is_zero() {
                    out.push((x[p].0, v));
                }
                p += 1;
                q += 1;
            }
        }
        SparseVec { entries: out }
    }

    pub fn add(&self, other: &SparseVec) -> SparseVec {
        self.axpy(&Q::ONE, other)
    }

    pub fn sub(&self, other: &SparseVec) -> SparseVec {
        self.axpy(&Q::from_int(-1), other)
    }

    pub fn dot(&self, other: &SparseVec) -> Q {
        let (x, y) = (&self.entries, &other.entries);
        let (mut p, mut q) = (0, 0);
        let mut acc = Q::ZERO;
        while p < x.len() && q < y.len() {
            match x[p].0.cmp(&y[q].0) {
                std::cmp::Ordering::Less => p += 1,
                std::cmp::Ordering::Greater => q += 1,
                std::cmp::Ordering::Equal => {
                    acc += &(&x[p].1 * &y[q].1);
                    p += 1;
                    q += 1;
                }
            }
        }
        acc
    }

    pub fn map_indices(&self, f: impl Fn(usize) -> usize) -> SparseVec {
        SparseVec::from_entries(self.entries.iter().map(|(i, v)| (f(*i), v.clone())).collect())
    }
}

/// Dense scratch buffer for summing many sparse contributions.
pub(crate) struct Accumulator {
    vals: Vec<Q>,
    touched: Vec<usize>,
    seen: Vec<bool>,
}

impl Accumulator {
    pub fn new(len: usize) -> Self {
        Accumulator { vals: vec![Q::ZERO; len], touched: Vec::new(), seen: vec![false; len] }
    }

    pub fn add(&mut self, i: usize, v: &Q) {
        if !self.seen[i] {
            self.seen[i] = true;
            self.touched.push(i);
            self.vals[i] = v.clone();
        } else {
            self.vals[i] += v;
        }
    }

    /// Returns the accumulated vector and resets the buffer.
    pub fn drain(&mut self) -> SparseVec {
        self.touched.sort_unstable();
        let mut out = Vec::with_capacity(self.touched.len());
        for &i in &self.touched {
            self.seen[i] = false;
            let v = std::mem::take(&mut self.vals[i]);
            if !v.is_zero() {
                out.push((i, v));
            }
        }
        self.touched.clear();
        SparseVec::from_sorted_unchecked(out)
    }
}
