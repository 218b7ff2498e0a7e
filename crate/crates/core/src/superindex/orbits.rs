use std::collections::BTreeMap;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use super::index::{Pyramid, Row, SuperIndex, TripleIndex};
use super::perm::{permute, Permutation};
use crate::exactlin::{ExactMatrix, Q};

/// One diagonal S_d-orbit on d-tuples.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Orbit<T> {
    /// Lexicographically least element of the orbit.
    pub representative: Vec<T>,
    pub size: usize,
    /// Permutations fixing the representative.
    pub stabilizer: Vec<Permutation>,
}

/// Least element of the orbit of `t` together with some `sigma` such that
/// `t.sigma` is that element.
pub fn to_representative<T: Clone + Ord>(t: &[T]) -> (Vec<T>, Permutation) {
    Permutation::all(t.len()).into_iter().map(|s| (permute(t, &s), s)).min().expect("S_d is nonempty")
}

/// Groups `domain` into S_d-orbits, one representative each, sorted.
pub fn orbit_representatives<T: Clone + Ord>(domain: impl IntoIterator<Item = Vec<T>>) -> Vec<Orbit<T>> {
    let mut counts: BTreeMap<Vec<T>, usize> = BTreeMap::new();
    for t in domain {
        let (rep, _) = to_representative(&t);
        *counts.entry(rep).or_default() += 1;
    }
    counts
        .into_iter()
        .map(|(rep, size)| {
            let stabilizer = Permutation::all(rep.len()).into_iter().filter(|s| permute(&rep, s) == rep).collect();
            Orbit { representative: rep, size, stabilizer }
        })
        .collect()
}

/// All d-tuples over `items`, lexicographic with the first slot most significant.
pub fn tuples<T: Clone>(items: &[T], d: usize) -> Vec<Vec<T>> {
    if d == 0 {
        return vec![Vec::new()];
    }
    (0..d).map(|_| items.iter().cloned()).multi_cartesian_product().collect()
}

fn regular_e_matrix(p: &Pyramid) -> ExactMatrix {
    let s = p.space();
    let entries = (1..p.m)
        .map(|i| (SuperIndex::Barred(i as u16), SuperIndex::Barred(i as u16 + 1)))
        .chain((1..p.n).map(|j| (SuperIndex::Unbarred(j as u16), SuperIndex::Unbarred(j as u16 + 1))))
        .map(|(a, b)| (s.position(a), s.position(b), Q::ONE));
    ExactMatrix::from_entries(s.dim(), s.dim(), entries)
}

/// Matrix of `e_{i,j;r}`: the sum of `e_{h,k}` over the fibre of υ.
pub fn triple_matrix(p: &Pyramid, t: &TripleIndex) -> ExactMatrix {
    let s = p.space();
    ExactMatrix::from_entries(
        s.dim(),
        s.dim(),
        p.fiber(t).into_iter().map(|(h, k)| (s.position(h), s.position(k), Q::ONE)),
    )
}

/// Every realisable triple, sorted.
pub fn realisable_triples(p: &Pyramid) -> Vec<TripleIndex> {
    let idx = p.space().indices();
    idx.iter().flat_map(|&h| idx.iter().map(move |&k| p.upsilon(h, k))).sorted().dedup().collect()
}

/// K: the realisable triples whose diagonal sums commute with the regular
/// nilpotent, decided by exact matrix commutators.
pub fn admissible_triples(p: &Pyramid) -> Vec<TripleIndex> {
    let e = regular_e_matrix(p);
    realisable_triples(p).into_iter().filter(|t| triple_matrix(p, t).commutator(&e).is_zero()).collect()
}

/// J: pairs whose first entry starts its row (1̄ or 1) and whose image under
/// υ lies in K. υ restricts to a bijection J → K.
pub fn j_pairs(p: &Pyramid, k: &[TripleIndex]) -> Vec<(SuperIndex, SuperIndex)> {
    let idx = p.space().indices();
    idx.iter()
        .filter(|h| h.predecessor().is_none())
        .flat_map(|&h| idx.iter().map(move |&kk| (h, kk)))
        .filter(|&(h, kk)| k.contains(&p.upsilon(h, kk)))
        .collect()
}

/// υ⁻¹(K): every pair mapping into K.
pub fn k_preimage(p: &Pyramid, k: &[TripleIndex]) -> Vec<(SuperIndex, SuperIndex)> {
    let idx = p.space().indices();
    idx.iter()
        .flat_map(|&h| idx.iter().map(move |&kk| (h, kk)))
        .filter(|&(h, kk)| k.contains(&p.upsilon(h, kk)))
        .collect()
}

/// Υ applied slot-wise.
pub fn upsilon_multi(p: &Pyramid, i: &[SuperIndex], j: &[SuperIndex]) -> Vec<TripleIndex> {
    assert_eq!(i.len(), j.len());
    i.iter().zip(j).map(|(&a, &b)| p.upsilon(a, b)).collect()
}

/// Row labels listed in K for a pair of rows.
pub fn shifts(k: &[TripleIndex], i: Row, j: Row) -> Vec<i64> {
    k.iter().filter(|t| t.i == i && t.j == j).map(|t| t.r).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn k_matches_closed_description() {
        for n in 1..=4 {
            for m in 1..=n {
                let p = Pyramid::new(m, n).unwrap();
                let k = admissible_triples(&p);
                assert_eq!(k.len(), 3 * m + n, "(m,n)=({m},{n})");
                let (m, n) = (m as i64, n as i64);
                assert_eq!(shifts(&k, Row::Barred, Row::Barred), (0..m).collect::<Vec<_>>());
                assert_eq!(shifts(&k, Row::Barred, Row::Unbarred), (0..m).collect::<Vec<_>>());
                assert_eq!(shifts(&k, Row::Unbarred, Row::Barred), (n - m..n).collect::<Vec<_>>());
                assert_eq!(shifts(&k, Row::Unbarred, Row::Unbarred), (0..n).collect::<Vec<_>>());
            }
        }
    }

    #[test]
    fn upsilon_is_bijective_on_j() {
        for n in 1..=4 {
            for m in 1..=n {
                let p = Pyramid::new(m, n).unwrap();
                let k = admissible_triples(&p);
                let j = j_pairs(&p, &k);
                let images: HashSet<TripleIndex> = j.iter().map(|&(a, b)| p.upsilon(a, b)).collect();
                assert_eq!(j.len(), k.len());
                assert_eq!(images, k.iter().copied().collect());
                assert!(k.iter().all(|t| p.is_realisable(t)));
            }
        }
    }

    #[test]
    fn orbit_examples() {
        let items = vec![1, 2, 3];
        let o = orbit_representatives(tuples(&items, 1));
        assert_eq!(o.len(), 3);
        assert!(o.iter().all(|x| x.size == 1));
        // m = n = 1: orbits on J^2 are the multisets of size 2 in J.
        let p = Pyramid::new(1, 1).unwrap();
        let k = admissible_triples(&p);
        let j = j_pairs(&p, &k);
        let orbits = orbit_representatives(tuples(&j, 2));
        assert_eq!(orbits.len(), j.len() * (j.len() + 1) / 2);
        let total: usize = orbits.iter().map(|o| o.size).sum();
        assert_eq!(total, j.len() * j.len());
        let total3: usize = orbit_representatives(tuples(&k, 3)).iter().map(|o| o.size).sum();
        assert_eq!(total3, k.len().pow(3));
    }

    #[test]
    fn upsilon_equivariant() {
        let p = Pyramid::new(1, 2).unwrap();
        let idx = p.space().indices();
        for i in tuples(&idx, 3) {
            for j in tuples(&idx, 3) {
                for s in Permutation::all(3) {
                    assert_eq!(
                        upsilon_multi(&p, &permute(&i, &s), &permute(&j, &s)),
                        permute(&upsilon_multi(&p, &i, &j), &s)
                    );
                }
            }
        }
    }
}
