//! gl(m|n) as exact matrices: parities, nilpotents from partition pairs, the
//! supertrace, the column grading and two constructions of the centralizer.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactlin::{commutant, subspace_equal, ExactMatrix, Subspace, Q};
use crate::superindex::{admissible_triples, triple_matrix, Parity, Pyramid, SuperIndex, SuperSpace, TripleIndex};

/// An element of gl(m|n).
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct GlElement {
    pub space: SuperSpace,
    pub matrix: ExactMatrix,
}

impl GlElement {
    pub fn new(space: SuperSpace, matrix: ExactMatrix) -> Result<Self> {
        let n = space.dim();
        if matrix.rows() != n || matrix.cols() != n {
            return Err(Error::Shape(format!("gl({}|{}) needs {n}x{n} matrices", space.m, space.n)));
        }
        Ok(GlElement { space, matrix })
    }

    pub fn zero(space: SuperSpace) -> Self {
        GlElement { space, matrix: ExactMatrix::zeros(space.dim(), space.dim()) }
    }

    /// Elementary matrix `e_{i,j}`.
    pub fn elementary(space: SuperSpace, i: SuperIndex, j: SuperIndex) -> Self {
        GlElement { space, matrix: ExactMatrix::unit(space.dim(), space.position(i), space.position(j)) }
    }

    /// Parity of a homogeneous element; `None` if it mixes both blocks.
    /// The zero element counts as even.
    pub fn parity(&self) -> Option<Parity> {
        let s = self.space;
        let mut seen = [false, false];
        for (i, j, _) in self.matrix.entries() {
            seen[(s.bit_at(i) ^ s.bit_at(j)) as usize] = true;
        }
        match seen {
            [_, false] => Some(Parity::Even),
            [false, true] => Some(Parity::Odd),
            [true, true] => None,
        }
    }

    fn part(&self, p: Parity) -> GlElement {
        let s = self.space;
        let entries = self
            .matrix
            .entries()
            .filter(|(i, j, _)| (s.bit_at(*i) ^ s.bit_at(*j)) == p.bit())
            .map(|(i, j, v)| (i, j, v.clone()));
        GlElement { space: s, matrix: ExactMatrix::from_entries(s.dim(), s.dim(), entries.collect::<Vec<_>>()) }
    }

    pub fn even_part(&self) -> GlElement {
        self.part(Parity::Even)
    }

    pub fn odd_part(&self) -> GlElement {
        self.part(Parity::Odd)
    }

    /// Nonzero homogeneous components with their parities.
    pub fn homogeneous_parts(&self) -> Vec<(Parity, GlElement)> {
        [Parity::Even, Parity::Odd]
            .into_iter()
            .map(|p| (p, self.part(p)))
            .filter(|(_, x)| !x.matrix.is_zero())
            .collect()
    }

    pub fn mul(&self, other: &GlElement) -> GlElement {
        GlElement { space: self.space, matrix: self.matrix.mul(&other.matrix) }
    }

    /// Super-commutator `[X, Y] = XY - (-1)^{|X||Y|} YX` of homogeneous elements.
    pub fn supercommutator(&self, other: &GlElement) -> Result<GlElement> {
        let (Some(p), Some(q)) = (self.parity(), other.parity()) else {
            return Err(Error::InvalidParams("super-commutator needs homogeneous arguments".into()));
        };
        let sign = Q::sign(p == Parity::Odd && q == Parity::Odd);
        let m = self.matrix.mul(&other.matrix).axpy(&-sign, &other.matrix.mul(&self.matrix));
        Ok(GlElement { space: self.space, matrix: m })
    }
}

/// Trace of the barred block minus trace of the unbarred block.
pub fn supertrace(x: &GlElement) -> Q {
    let s = x.space;
    (0..s.dim())
        .map(|p| {
            let v = x.matrix.get(p, p);
            if s.bit_at(p) == 0 {
                v
            } else {
                -v
            }
        })
        .sum()
}

/// The parity operator ℘: `v ↦ (-1)^{|v|} v` on V.
pub fn parity_operator(space: SuperSpace) -> ExactMatrix {
    ExactMatrix::from_entries(space.dim(), space.dim(), (0..space.dim()).map(|p| (p, p, Q::sign(space.bit_at(p) == 1))))
}

/// `deg(e_{i,j}) = col(j) - col(i)`.
pub fn grading_degree(p: &Pyramid, i: SuperIndex, j: SuperIndex) -> i64 {
    p.grading_degree(i, j)
}

/// Weakly decreasing positive parts.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct Partition(pub Vec<usize>);

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) || parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Parse(format!("{parts:?} is not a partition (weakly decreasing positive parts)")));
        }
        Ok(Partition(parts))
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn largest(&self) -> usize {
        self.0.first().copied().unwrap_or(0)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "{}", s.join(","))
    }
}

impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t.is_empty() {
            return Ok(Partition(Vec::new()));
        }
        let parts = t
            .split(',')
            .map(|x| x.trim().parse::<usize>().map_err(|_| Error::Parse(format!("bad partition part {x:?} in {s:?}"))))
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

/// Even nilpotent in Jordan form with blocks `lambda` on the barred part and
/// `mu` on the unbarred part (upper triangular, barred block first).
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct NilpotentData {
    pub lambda: Partition,
    pub mu: Partition,
    pub element: GlElement,
}

impl NilpotentData {
    pub fn from_partitions(lambda: Partition, mu: Partition) -> Self {
        let space = SuperSpace::new(lambda.size(), mu.size());
        let mut entries = Vec::new();
        for (start, part) in [(0, &lambda), (space.m, &mu)] {
            let mut offset = start;
            for &b in &part.0 {
                for k in 0..b - 1 {
                    entries.push((offset + k, offset + k + 1, Q::ONE));
                }
                offset += b;
            }
        }
        let matrix = ExactMatrix::from_entries(space.dim(), space.dim(), entries);
        NilpotentData { lambda, mu, element: GlElement { space, matrix } }
    }

    /// Parses `"λ1,λ2,…|μ1,μ2,…"` and checks the sizes against `(m, n)`.
    pub fn parse(s: &str, m: usize, n: usize) -> Result<Self> {
        let (l, r) =
            s.split_once('|').ok_or_else(|| Error::Parse(format!("partition pair {s:?} needs the form \"λ|μ\"")))?;
        let (lambda, mu): (Partition, Partition) = (l.parse()?, r.parse()?);
        if lambda.size() != m || mu.size() != n {
            return Err(Error::InvalidParams(format!(
                "partitions {lambda}|{mu} have sizes ({}|{}), expected ({m}|{n})",
                lambda.size(),
                mu.size()
            )));
        }
        Ok(Self::from_partitions(lambda, mu))
    }

    pub fn space(&self) -> SuperSpace {
        self.element.space
    }

    pub fn matrix(&self) -> &ExactMatrix {
        &self.element.matrix
    }

    /// Size of the largest Jordan block.
    pub fn largest_block(&self) -> usize {
        self.lambda.largest().max(self.mu.largest())
    }

    pub fn is_regular(&self) -> bool {
        self.lambda.0.len() <= 1 && self.mu.0.len() <= 1
    }
}

impl fmt::Display for NilpotentData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}|{}", self.lambda, self.mu)
    }
}

/// `e = Σ e_{ī,ī+1} + Σ e_{j,j+1}` in gl(m|n), `m <= n`.
pub fn regular_nilpotent(m: usize, n: usize) -> Result<NilpotentData> {
    if m > n {
        return Err(Error::InvalidParams(format!(
            "regular_nilpotent needs m <= n, got ({m}|{n}); use gl({n}|{m}), which is isomorphic"
        )));
    }
    if n == 0 {
        return Err(Error::InvalidParams("regular_nilpotent needs n >= 1".into()));
    }
    let lambda = Partition(if m > 0 { vec![m] } else { Vec::new() });
    Ok(NilpotentData::from_partitions(lambda, Partition(vec![n])))
}

/// `g_e = ker(ad e)` computed as the commutant of e in the full matrix space.
pub fn centralizer_oracle(e: &NilpotentData) -> Subspace {
    commutant(e.space().dim(), std::slice::from_ref(e.matrix())).expect("square by construction")
}

/// Canonical basis of the oracle centralizer as gl elements.
pub fn centralizer_oracle_basis(e: &NilpotentData) -> Vec<GlElement> {
    let s = e.space();
    centralizer_oracle(e).matrices(s.dim()).into_iter().map(|m| GlElement { space: s, matrix: m }).collect()
}

/// The basis `{e_{i,j;r} : (i,j,r) ∈ K}` of the regular centralizer.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CentralizerBasis {
    pub pyramid: Pyramid,
    pub elements: Vec<(TripleIndex, GlElement)>,
    /// Kazhdan degree `2 r + 2` of each element.
    pub kazhdan_degrees: Vec<i64>,
}

impl CentralizerBasis {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn span(&self) -> Subspace {
        let n = self.pyramid.space().dim();
        Subspace::span_matrices(n * n, self.elements.iter().map(|(_, x)| &x.matrix))
    }

    pub fn gl_elements(&self) -> Vec<GlElement> {
        self.elements.iter().map(|(_, x)| x.clone()).collect()
    }
}

/// Kazhdan degree of a column degree `r`.
pub fn kazhdan_degree(r: i64) -> i64 {
    2 * r + 2
}

/// Combinatorial centralizer basis, checked against [`centralizer_oracle`].
pub fn centralizer_combinatorial(m: usize, n: usize) -> Result<CentralizerBasis> {
    let pyramid = Pyramid::new(m, n)?;
    let space = pyramid.space();
    let k = admissible_triples(&pyramid);
    let elements: Vec<(TripleIndex, GlElement)> =
        k.iter().map(|t| (*t, GlElement { space, matrix: triple_matrix(&pyramid, t) })).collect();
    let kazhdan_degrees = k.iter().map(|t| kazhdan_degree(t.r)).collect();
    let basis = CentralizerBasis { pyramid, elements, kazhdan_degrees };
    let oracle = centralizer_oracle(&regular_nilpotent(m, n)?);
    if !subspace_equal(&basis.span(), &oracle)? || basis.len() != oracle.dim() {
        return Err(Error::Convention(format!(
            "combinatorial centralizer basis of gl({m}|{n}) does not match ker(ad e)"
        )));
    }
    Ok(basis)
}

/// Splitting of gl(m|n) by the sign of the column degree, with the character χ.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GradedDecomposition {
    pub pyramid: Pyramid,
    /// `col(i) <= col(j)`.
    pub p: Vec<(SuperIndex, SuperIndex)>,
    /// `col(i) = col(j)`.
    pub h: Vec<(SuperIndex, SuperIndex)>,
    /// `col(i) > col(j)`.
    pub m_neg: Vec<(SuperIndex, SuperIndex)>,
    /// Nonzero values of χ on elementary matrices.
    pub chi: Vec<((SuperIndex, SuperIndex), Q)>,
}

impl GradedDecomposition {
    pub fn new(pyramid: Pyramid) -> Result<Self> {
        let idx = pyramid.space().indices();
        let pairs: Vec<(SuperIndex, SuperIndex)> = idx.iter().flat_map(|&a| idx.iter().map(move |&b| (a, b))).collect();
        let deg = |&(a, b): &(SuperIndex, SuperIndex)| pyramid.grading_degree(a, b);
        let e = regular_nilpotent(pyramid.m, pyramid.n)?;
        let chi = pairs.iter().map(|&(a, b)| ((a, b), chi_value(&e, a, b))).filter(|(_, v)| !v.is_zero()).collect();
        Ok(GradedDecomposition {
            pyramid,
            p: pairs.iter().filter(|x| deg(x) >= 0).copied().collect(),
            h: pairs.iter().filter(|x| deg(x) == 0).copied().collect(),
            m_neg: pairs.iter().filter(|x| deg(x) < 0).copied().collect(),
            chi,
        })
    }

    pub fn chi(&self, a: SuperIndex, b: SuperIndex) -> Q {
        self.chi.iter().find(|(k, _)| *k == (a, b)).map(|(_, v)| v.clone()).unwrap_or(Q::ZERO)
    }
}

/// χ(e_{a,b}) = str(℘ e e_{a,b}), i.e. the ordinary trace pairing with e.
pub fn chi_value(e: &NilpotentData, a: SuperIndex, b: SuperIndex) -> Q {
    let s = e.space();
    let x = GlElement::elementary(s, a, b);
    let wp = parity_operator(s);
    supertrace(&GlElement { space: s, matrix: wp.mul(e.matrix()).mul(&x.matrix) })
}
