use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Element of I(m|n). Barred indices are even, unbarred ones odd; the derived
/// order `1̄ < … < m̄ < 1 < … < n` is the total order on I(m|n).
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SuperIndex {
    Barred(u16),
    Unbarred(u16),
}

/// Z/2 parity.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn bit(self) -> u8 {
        match self {
            Parity::Even => 0,
            Parity::Odd => 1,
        }
    }

    pub fn from_bit(b: u8) -> Parity {
        if b & 1 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

impl std::ops::Add for Parity {
    type Output = Parity;

    fn add(self, other: Parity) -> Parity {
        Parity::from_bit(self.bit() + other.bit())
    }
}

/// The two pyramid rows: barred indices on top, unbarred below.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub enum Row {
    Barred,
    Unbarred,
}

impl Row {
    pub fn parity(self) -> Parity {
        match self {
            Row::Barred => Parity::Even,
            Row::Unbarred => Parity::Odd,
        }
    }
}

impl SuperIndex {
    pub fn value(self) -> usize {
        match self {
            SuperIndex::Barred(v) | SuperIndex::Unbarred(v) => v as usize,
        }
    }

    pub fn parity(self) -> Parity {
        self.row().parity()
    }

    pub fn bit(self) -> u8 {
        self.parity().bit()
    }

    pub fn row(self) -> Row {
        match self {
            SuperIndex::Barred(_) => Row::Barred,
            SuperIndex::Unbarred(_) => Row::Unbarred,
        }
    }

    /// Left neighbour in the same row (`j - 1`), if any.
    pub fn predecessor(self) -> Option<SuperIndex> {
        match self {
            SuperIndex::Barred(v) if v > 1 => Some(SuperIndex::Barred(v - 1)),
            SuperIndex::Unbarred(v) if v > 1 => Some(SuperIndex::Unbarred(v - 1)),
            _ => None,
        }
    }
}

impl fmt::Display for SuperIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SuperIndex::Barred(v) => write!(f, "{v}\u{0304}"),
            SuperIndex::Unbarred(v) => write!(f, "{v}"),
        }
    }
}

impl fmt::Debug for SuperIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SuperIndex::Barred(v) => write!(f, "{v}b"),
            SuperIndex::Unbarred(v) => write!(f, "{v}"),
        }
    }
}

impl FromStr for SuperIndex {
    type Err = Error;

    /// `"2b"` or `"2\u{0304}"` for barred 2, `"2"` for unbarred 2.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let (digits, barred) = if let Some(d) = t.strip_suffix('b') {
            (d, true)
        } else if let Some(d) = t.strip_suffix('\u{0304}') {
            (d, true)
        } else {
            (t, false)
        };
        let v: u16 = digits.parse().map_err(|_| Error::Parse(format!("bad index {s:?}")))?;
        if v == 0 {
            return Err(Error::Parse(format!("indices start at 1: {s:?}")));
        }
        Ok(if barred { SuperIndex::Barred(v) } else { SuperIndex::Unbarred(v) })
    }
}

/// The superspace C^{m|n} with basis indexed by I(m|n).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct SuperSpace {
    pub m: usize,
    pub n: usize,
}

impl SuperSpace {
    pub fn new(m: usize, n: usize) -> Self {
        SuperSpace { m, n }
    }

    pub fn dim(&self) -> usize {
        self.m + self.n
    }

    /// I(m|n) in increasing order.
    pub fn indices(&self) -> Vec<SuperIndex> {
        (1..=self.m as u16).map(SuperIndex::Barred).chain((1..=self.n as u16).map(SuperIndex::Unbarred)).collect()
    }

    /// Position of `i` in the ordered basis.
    pub fn position(&self, i: SuperIndex) -> usize {
        match i {
            SuperIndex::Barred(v) => {
                assert!(v as usize >= 1 && v as usize <= self.m, "{i:?} not in I({}|{})", self.m, self.n);
                v as usize - 1
            }
            SuperIndex::Unbarred(v) => {
                assert!(v as usize >= 1 && v as usize <= self.n, "{i:?} not in I({}|{})", self.m, self.n);
                self.m + v as usize - 1
            }
        }
    }

    pub fn index_at(&self, pos: usize) -> SuperIndex {
        assert!(pos < self.dim());
        if pos < self.m {
            SuperIndex::Barred(pos as u16 + 1)
        } else {
            SuperIndex::Unbarred((pos - self.m) as u16 + 1)
        }
    }

    /// Parity bit of the basis vector at `pos`.
    pub fn bit_at(&self, pos: usize) -> u8 {
        u8::from(pos >= self.m)
    }
}

/// d-tuple of indices with its parity vector.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct MultiIndex(pub Vec<SuperIndex>);

impl MultiIndex {
    pub fn new(entries: Vec<SuperIndex>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::InvalidParams("multi-index of length 0".into()));
        }
        Ok(MultiIndex(entries))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[SuperIndex] {
        &self.0
    }

    /// epsilon_i, one bit per slot.
    pub fn parities(&self) -> Vec<u8> {
        self.0.iter().map(|i| i.bit()).collect()
    }

    pub fn permute(&self, sigma: &super::Permutation) -> MultiIndex {
        MultiIndex(super::permute(&self.0, sigma))
    }
}

/// Right-justified two-row pyramid of the regular nilpotent in gl(m|n).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct Pyramid {
    pub m: usize,
    pub n: usize,
}

impl Pyramid {
    pub fn new(m: usize, n: usize) -> Result<Self> {
        if m > n {
            return Err(Error::InvalidParams(format!(
                "pyramid needs m <= n, got ({m}|{n}); gl({m}|{n}) is isomorphic to gl({n}|{m}), swap the arguments"
            )));
        }
        if n == 0 {
            return Err(Error::InvalidParams("pyramid needs n >= 1".into()));
        }
        Ok(Pyramid { m, n })
    }

    pub fn space(&self) -> SuperSpace {
        SuperSpace::new(self.m, self.n)
    }

    /// Column coordinate in `1..=n`.
    pub fn col(&self, i: SuperIndex) -> usize {
        match i {
            SuperIndex::Barred(v) => self.n - self.m + v as usize,
            SuperIndex::Unbarred(v) => v as usize,
        }
    }

    pub fn row(&self, i: SuperIndex) -> Row {
        i.row()
    }

    /// V-grading of the basis vector v_i.
    pub fn v_degree(&self, i: SuperIndex) -> i64 {
        self.n as i64 - self.col(i) as i64
    }

    /// `deg(e_{i,j}) = col(j) - col(i)`.
    pub fn grading_degree(&self, i: SuperIndex, j: SuperIndex) -> i64 {
        self.col(j) as i64 - self.col(i) as i64
    }

    pub fn col_at(&self, pos: usize) -> usize {
        self.col(self.space().index_at(pos))
    }

    /// The map υ: (h, k) ↦ (row h, row k, col k − col h).
    pub fn upsilon(&self, h: SuperIndex, k: SuperIndex) -> TripleIndex {
        TripleIndex { i: h.row(), j: k.row(), r: self.grading_degree(h, k) }
    }

    /// Whether some pair realises the triple.
    pub fn is_realisable(&self, t: &TripleIndex) -> bool {
        let idx = self.space().indices();
        idx.iter().any(|&h| idx.iter().any(|&k| self.upsilon(h, k) == *t))
    }

    /// All pairs (h, k) with υ(h, k) = t.
    pub fn fiber(&self, t: &TripleIndex) -> Vec<(SuperIndex, SuperIndex)> {
        let idx = self.space().indices();
        idx.iter().flat_map(|&h| idx.iter().map(move |&k| (h, k))).filter(|&(h, k)| self.upsilon(h, k) == *t).collect()
    }
}

/// `(i, j, r)`: row labels and a column shift.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct TripleIndex {
    pub i: Row,
    pub j: Row,
    pub r: i64,
}

impl TripleIndex {
    /// Z/2 parity of e_{i,j;r}.
    pub fn parity(&self) -> Parity {
        self.i.parity() + self.j.parity()
    }
}

impl fmt::Display for TripleIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let lab = |r: Row| if r == Row::Barred { "1\u{0304}" } else { "1" };
        write!(f, "({},{},{})", lab(self.i), lab(self.j), self.r)
    }
}
