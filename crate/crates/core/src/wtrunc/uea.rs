use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactlin::Q;
use crate::glsuper::{kazhdan_degree, GradedDecomposition};
use crate::superindex::{Pyramid, SuperIndex};

/// A PBW monomial: basis positions in nondecreasing order, odd positions at most once.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct PbwMonomial(pub Vec<u16>);

impl PbwMonomial {
    pub fn one() -> Self {
        PbwMonomial(Vec::new())
    }

    /// Ordinary degree.
    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn exponents(&self, basis_len: usize) -> Vec<u32> {
        let mut out = vec![0; basis_len];
        for &k in &self.0 {
            out[k as usize] += 1;
        }
        out
    }
}

/// Element of U(gl(m|n)) in the PBW basis.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct UeaElement {
    pub terms: BTreeMap<PbwMonomial, Q>,
}

impl UeaElement {
    pub fn zero() -> Self {
        UeaElement::default()
    }

    pub fn one() -> Self {
        Self::monomial(PbwMonomial::one(), Q::ONE)
    }

    pub fn monomial(m: PbwMonomial, c: Q) -> Self {
        let mut out = UeaElement::zero();
        out.add_term(m, &c);
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, m: PbwMonomial, c: &Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn axpy(&mut self, a: &Q, other: &UeaElement) {
        for (m, c) in &other.terms {
            self.add_term(m.clone(), &(a * c));
        }
    }

    pub fn scale(&self, a: &Q) -> UeaElement {
        let mut out = UeaElement::zero();
        out.axpy(a, self);
        out
    }

    /// Largest ordinary degree; 0 for the zero element.
    pub fn degree(&self) -> usize {
        self.terms.keys().map(|m| m.degree()).max().unwrap_or(0)
    }
}

/// gl(m|n) with the ordered basis p then m_neg, its bracket and the character χ.
#[derive(Clone, Debug)]
pub struct PbwAlgebra {
    pub pyramid: Pyramid,
    pub basis: Vec<(SuperIndex, SuperIndex)>,
    /// Number of leading basis elements belonging to p.
    pub n_p: usize,
    parity: Vec<u8>,
    col_degree: Vec<i64>,
    chi: Vec<Q>,
    position: HashMap<(SuperIndex, SuperIndex), u16>,
    /// Ordinary degree truncation.
    pub max_degree: usize,
}

type Terms = Vec<(Vec<u16>, Q)>;

impl PbwAlgebra {
    pub fn new(pyramid: Pyramid, max_degree: usize) -> Result<Self> {
        let g = GradedDecomposition::new(pyramid)?;
        let basis: Vec<(SuperIndex, SuperIndex)> = g.p.iter().chain(&g.m_neg).copied().collect();
        let parity = basis.iter().map(|(a, b)| a.bit() ^ b.bit()).collect();
        let col_degree = basis.iter().map(|&(a, b)| pyramid.grading_degree(a, b)).collect();
        let chi = basis.iter().map(|&(a, b)| g.chi(a, b)).collect();
        let position = basis.iter().enumerate().map(|(k, &x)| (x, k as u16)).collect();
        Ok(PbwAlgebra { pyramid, n_p: g.p.len(), basis, parity, col_degree, chi, position, max_degree })
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn position(&self, a: SuperIndex, b: SuperIndex) -> u16 {
        self.position[&(a, b)]
    }

    pub fn is_p(&self, k: u16) -> bool {
        (k as usize) < self.n_p
    }

    pub fn parity(&self, k: u16) -> u8 {
        self.parity[k as usize]
    }

    pub fn chi(&self, k: u16) -> &Q {
        &self.chi[k as usize]
    }

    pub fn monomial_parity(&self, m: &PbwMonomial) -> u8 {
        m.0.iter().fold(0, |a, &k| a ^ self.parity(k))
    }

    /// Kazhdan degree: `Σ (2·col-degree + 2)` over the factors.
    pub fn kazhdan_degree(&self, m: &PbwMonomial) -> i64 {
        m.0.iter().map(|&k| kazhdan_degree(self.col_degree[k as usize])).sum()
    }

    /// The basis element `e_{a,b}` as a UEA element.
    pub fn generator(&self, a: SuperIndex, b: SuperIndex) -> UeaElement {
        UeaElement::monomial(PbwMonomial(vec![self.position(a, b)]), Q::ONE)
    }

    /// `[e_{ab}, e_{cd}] = δ_{bc} e_{ad} - (-1)^{|x||y|} δ_{da} e_{cb}`.
    pub fn bracket(&self, k: u16, l: u16) -> Vec<(u16, Q)> {
        let ((a, b), (c, d)) = (self.basis[k as usize], self.basis[l as usize]);
        let mut out: Vec<(u16, Q)> = Vec::new();
        if b == c {
            out.push((self.position(a, d), Q::ONE));
        }
        if d == a {
            let s = Q::sign(self.parity(k) & self.parity(l) == 0);
            let key = self.position(c, b);
            match out.iter_mut().find(|(q, _)| *q == key) {
                Some(e) => e.1 += &s,
                None => out.push((key, s)),
            }
        }
        out.retain(|(_, v)| !v.is_zero());
        out
    }

    /// Exact product in U(g). Errors if the result could exceed the ordinary degree bound.
    pub fn multiply(&self, a: &UeaElement, b: &UeaElement) -> Result<UeaElement> {
        let needed = a.degree() + b.degree();
        if needed > self.max_degree {
            return Err(Error::Truncation { needed, bound: self.max_degree });
        }
        Ok(Straightener::new(self).multiply(a, b))
    }

    /// Super commutator `[a, b]` for homogeneous monomial expansions, extended linearly.
    pub fn supercommutator(&self, a: &UeaElement, b: &UeaElement) -> Result<UeaElement> {
        let needed = a.degree() + b.degree();
        if needed > self.max_degree {
            return Err(Error::Truncation { needed, bound: self.max_degree });
        }
        Ok(Straightener::new(self).supercommutator(a, b))
    }
}

/// PBW straightening with a memo table of `b · monomial`.
pub(crate) struct Straightener<'a> {
    alg: &'a PbwAlgebra,
    cache: HashMap<(u16, Vec<u16>), Terms>,
}

impl<'a> Straightener<'a> {
    pub(crate) fn new(alg: &'a PbwAlgebra) -> Self {
        Straightener { alg, cache: HashMap::new() }
    }

    fn accumulate(acc: &mut HashMap<Vec<u16>, Q>, terms: &Terms, c: &Q) {
        for (m, v) in terms {
            let slot = acc.entry(m.clone()).or_insert(Q::ZERO);
            *slot += &(v * c);
        }
    }

    fn finish(acc: HashMap<Vec<u16>, Q>) -> Terms {
        acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
    }

    /// `e_b · mono` rewritten in the PBW basis.
    fn lmul(&mut self, b: u16, mono: &[u16]) -> Terms {
        let key = (b, mono.to_vec());
        if let Some(t) = self.cache.get(&key) {
            return t.clone();
        }
        let out = self.lmul_uncached(b, mono);
        self.cache.insert(key, out.clone());
        out
    }

    fn lmul_uncached(&mut self, b: u16, mono: &[u16]) -> Terms {
        let Some(&y) = mono.first() else {
            return vec![(vec![b], Q::ONE)];
        };
        let rest = &mono[1..];
        let prepend = || {
            let mut m = Vec::with_capacity(mono.len() + 1);
            m.push(b);
            m.extend_from_slice(mono);
            vec![(m, Q::ONE)]
        };
        if b < y {
            return prepend();
        }
        let mut acc: HashMap<Vec<u16>, Q> = HashMap::new();
        if b == y {
            if self.alg.parity(b) == 0 {
                return prepend();
            }
            // b·b = ½[b,b] for odd b
            for (k, v) in self.alg.bracket(b, b) {
                let t = self.lmul(k, rest);
                Self::accumulate(&mut acc, &t, &(v * Q::new(1, 2)));
            }
            return Self::finish(acc);
        }
        // b·y·rest = (-1)^{|b||y|} y·(b·rest) + [b,y]·rest
        let s = Q::sign(self.alg.parity(b) & self.alg.parity(y) == 1);
        for (m, c) in self.lmul(b, rest) {
            let t = self.lmul(y, &m);
            Self::accumulate(&mut acc, &t, &(&s * &c));
        }
        for (k, v) in self.alg.bracket(b, y) {
            let t = self.lmul(k, rest);
            Self::accumulate(&mut acc, &t, &v);
        }
        Self::finish(acc)
    }

    /// `mono · w`, applying the factors of `mono` right to left.
    fn mono_times(&mut self, mono: &[u16], w: &Terms) -> Terms {
        let mut cur = w.clone();
        for &b in mono.iter().rev() {
            let mut acc: HashMap<Vec<u16>, Q> = HashMap::new();
            for (m, c) in &cur {
                let t = self.lmul(b, m);
                Self::accumulate(&mut acc, &t, c);
            }
            cur = Self::finish(acc);
        }
        cur
    }

    pub(crate) fn multiply(&mut self, a: &UeaElement, b: &UeaElement) -> UeaElement {
        let w: Terms = b.terms.iter().map(|(m, c)| (m.0.clone(), c.clone())).collect();
        let mut out = UeaElement::zero();
        for (mu, cu) in &a.terms {
            for (m, c) in self.mono_times(&mu.0, &w) {
                out.add_term(PbwMonomial(m), &(&c * cu));
            }
        }
        out
    }

    pub(crate) fn supercommutator(&mut self, a: &UeaElement, b: &UeaElement) -> UeaElement {
        let mut out = UeaElement::zero();
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                let x = UeaElement::monomial(ma.clone(), ca.clone());
                let y = UeaElement::monomial(mb.clone(), cb.clone());
                let s = Q::sign(self.alg.monomial_parity(ma) & self.alg.monomial_parity(mb) == 0);
                out.axpy(&Q::ONE, &self.multiply(&x, &y));
                out.axpy(&s, &self.multiply(&y, &x));
            }
        }
        out
    }
}

impl fmt::Display for UeaElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mono: Vec<String> = m.0.iter().map(|k| format!("b{k}")).collect();
                if mono.is_empty() {
                    c.to_string()
                } else {
                    format!("{c}*{}", mono.join("*"))
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}
