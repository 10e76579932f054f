//! Orlik-Solomon algebras: nbc bases, straightening and the quadratic
//! relations that define the quadratic closure.

use std::collections::HashMap;
use std::sync::Mutex;

use num_traits::{One, Zero};

use crate::arrangement::Matroid;
use crate::bits::{self, IndexSet};
use crate::kernel::scalar::{rat, Rational};
use crate::kernel::{rank_of_vectors, Echelon, FieldArith, SparseVec};
use crate::series::Polynomial;

/// Sign of `e_S ^ e_T` relative to the sorted monomial `e_{S u T}`; zero
/// when the sets meet.
pub fn wedge_sign(s: IndexSet, t: IndexSet) -> i64 {
    if s & t != 0 {
        return 0;
    }
    let mut inversions = 0u32;
    for j in bits::iter(t) {
        inversions += (s >> j >> 1).count_ones();
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Boundary `sum_q (-1)^(q-1) e_{C - c_q}` as a map from index sets.
pub fn boundary(c: IndexSet) -> Vec<(IndexSet, i64)> {
    bits::iter(c)
        .enumerate()
        .map(|(q, i)| (c & !bits::singleton(i), if q % 2 == 0 { 1 } else { -1 }))
        .collect()
}

/// Monomial basis of the exterior power `E_k` on `n` generators, in
/// lexicographic order.
#[derive(Debug, Clone)]
pub struct ExteriorBasis {
    pub sets: Vec<IndexSet>,
    index: HashMap<IndexSet, usize>,
}

impl ExteriorBasis {
    pub fn new(n: usize, k: usize) -> Self {
        let sets = bits::subsets_of_size(bits::full(n), k);
        let index = sets.iter().enumerate().map(|(i, s)| (*s, i)).collect();
        ExteriorBasis { sets, index }
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn index(&self, s: IndexSet) -> Option<usize> {
        self.index.get(&s).copied()
    }
}

/// Element of a single graded piece, in nbc coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct OsElement {
    pub degree: usize,
    pub coords: SparseVec<Rational>,
}

#[derive(Debug, Clone, Copy)]
struct BrokenCircuit {
    broken: IndexSet,
    circuit: IndexSet,
    least: usize,
}

/// The Orlik-Solomon algebra `E / I` of a matroid with respect to a linear
/// order on the hyperplanes. Monomials are always written with increasing
/// hyperplane index; the order only decides which sets are nbc.
#[derive(Debug)]
pub struct OsAlgebra {
    matroid: Matroid,
    order: Vec<usize>,
    basis: Vec<Vec<IndexSet>>,
    index: HashMap<IndexSet, usize>,
    broken: Vec<BrokenCircuit>,
    memo: Mutex<HashMap<IndexSet, SparseVec<Rational>>>,
}

impl OsAlgebra {
    /// Build with the input order of the hyperplanes.
    pub fn new(matroid: &Matroid) -> Self {
        Self::with_order(matroid, &(0..matroid.ground_size()).collect::<Vec<_>>())
    }

    /// `order[k]` is the hyperplane in position `k`.
    pub fn with_order(matroid: &Matroid, order: &[usize]) -> Self {
        let n = matroid.ground_size();
        assert_eq!(order.len(), n, "order must be a permutation of the hyperplanes");
        let mut pos = vec![usize::MAX; n];
        for (k, &h) in order.iter().enumerate() {
            assert!(pos[h] == usize::MAX, "order repeats hyperplane {h}");
            pos[h] = k;
        }
        let broken: Vec<BrokenCircuit> = matroid
            .circuits()
            .iter()
            .map(|&c| {
                let least = bits::iter(c).min_by_key(|&i| pos[i]).expect("nonempty circuit");
                BrokenCircuit { broken: c & !bits::singleton(least), circuit: c, least }
            })
            .collect();

        let mut basis: Vec<Vec<IndexSet>> = vec![vec![0]];
        loop {
            let prev = basis.last().expect("nonempty");
            let mut next = Vec::new();
            for &s in prev {
                let start = bits::max(s).map_or(0, |m| m + 1);
                for i in start..n {
                    let t = s | bits::singleton(i);
                    if !broken.iter().any(|b| bits::is_subset(b.broken, t)) {
                        next.push(t);
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            basis.push(next);
        }
        let index = basis
            .iter()
            .flat_map(|v| v.iter().enumerate().map(|(i, s)| (*s, i)))
            .collect();
        OsAlgebra {
            matroid: matroid.clone(),
            order: order.to_vec(),
            basis,
            index,
            broken,
            memo: Mutex::new(HashMap::new()),
        }
    }

    pub fn matroid(&self) -> &Matroid {
        &self.matroid
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn generators(&self) -> usize {
        self.matroid.ground_size()
    }

    /// Top nonzero degree, which equals the rank of the matroid.
    pub fn top_degree(&self) -> usize {
        self.basis.len() - 1
    }

    /// nbc sets of size `k`, lexicographic in their sorted elements.
    pub fn basis(&self, k: usize) -> &[IndexSet] {
        self.basis.get(k).map_or(&[], Vec::as_slice)
    }

    pub fn dim(&self, k: usize) -> usize {
        self.basis(k).len()
    }

    pub fn dims(&self) -> Vec<usize> {
        self.basis.iter().map(Vec::len).collect()
    }

    pub fn poincare(&self) -> Polynomial {
        Polynomial::from_counts(&self.dims())
    }

    /// Position of an nbc set inside its graded piece.
    pub fn basis_index(&self, s: IndexSet) -> Option<usize> {
        self.index.get(&s).copied().filter(|&i| self.basis(bits::len(s)).get(i) == Some(&s))
    }

    /// The monomial `e_S` (sorted by index) in nbc coordinates.
    pub fn monomial(&self, s: IndexSet) -> SparseVec<Rational> {
        let mut memo = self.memo.lock().expect("memo lock");
        self.straighten(s, &mut memo)
    }

    fn straighten(&self, s: IndexSet, memo: &mut HashMap<IndexSet, SparseVec<Rational>>) -> SparseVec<Rational> {
        if let Some(i) = self.basis_index(s) {
            return vec![(i as u32, Rational::one())];
        }
        if let Some(v) = memo.get(&s) {
            return v.clone();
        }
        let out = match self.broken.iter().find(|b| bits::is_subset(b.broken, s)) {
            None => unreachable!("a set containing no broken circuit is nbc"),
            Some(b) if bits::contains(s, b.least) => Vec::new(),
            Some(b) => {
                // d(e_C) ^ e_T lies in I, with T = S - (C - least)
                let t = s & !b.broken;
                let mut lead = 0i64;
                let mut acc: HashMap<u32, Rational> = HashMap::new();
                let mut others = Vec::new();
                for (face, sign) in boundary(b.circuit) {
                    let coef = sign * wedge_sign(face, t);
                    if face == b.broken {
                        lead = coef;
                    } else {
                        others.push((face | t, coef));
                    }
                }
                for (u, coef) in others {
                    for (k, x) in self.straighten(u, memo) {
                        let slot = acc.entry(k).or_insert_with(Rational::zero);
                        *slot -= x * rat(coef * lead);
                    }
                }
                let mut v: SparseVec<Rational> = acc.into_iter().filter(|(_, x)| !x.is_zero()).collect();
                v.sort_unstable_by_key(|e| e.0);
                v
            }
        };
        memo.insert(s, out.clone());
        out
    }

    /// Product of two homogeneous elements.
    pub fn multiply(&self, x: &OsElement, y: &OsElement) -> OsElement {
        let degree = x.degree + y.degree;
        let mut acc: HashMap<u32, Rational> = HashMap::new();
        let mut memo = self.memo.lock().expect("memo lock");
        for (a, xa) in &x.coords {
            let s = self.basis(x.degree)[*a as usize];
            for (b, yb) in &y.coords {
                let t = self.basis(y.degree)[*b as usize];
                let sign = wedge_sign(s, t);
                if sign == 0 {
                    continue;
                }
                let c = xa * yb * rat(sign);
                for (k, z) in self.straighten(s | t, &mut memo) {
                    *acc.entry(k).or_insert_with(Rational::zero) += &c * z;
                }
            }
        }
        let mut coords: SparseVec<Rational> = acc.into_iter().filter(|(_, x)| !x.is_zero()).collect();
        coords.sort_unstable_by_key(|e| e.0);
        OsElement { degree, coords }
    }

    /// The generator `e_i` as an element.
    pub fn generator(&self, i: usize) -> OsElement {
        OsElement { degree: 1, coords: vec![(i as u32, Rational::one())] }
    }

    /// Images of the degree-`s` basis under left multiplication by each
    /// generator: `result[i][a]` is `e_i * basis(s)[a]`.
    pub fn left_multiplication(&self, s: usize) -> Vec<Vec<SparseVec<Rational>>> {
        let mut memo = self.memo.lock().expect("memo lock");
        (0..self.generators())
            .map(|i| {
                let ei = bits::singleton(i);
                self.basis(s)
                    .iter()
                    .map(|&a| match wedge_sign(ei, a) {
                        0 => Vec::new(),
                        1 => self.straighten(a | ei, &mut memo),
                        _ => {
                            let mut v = self.straighten(a | ei, &mut memo);
                            for e in v.iter_mut() {
                                e.1 = -e.1.clone();
                            }
                            v
                        }
                    })
                    .collect()
            })
            .collect()
    }

    /// Basis of the degree-2 relations `I_2`, inside `E_2` with lexicographic
    /// monomial order. It is spanned by the boundaries of 3-element circuits.
    pub fn quadratic_relations(&self) -> Vec<SparseVec<Rational>> {
        let e2 = ExteriorBasis::new(self.generators(), 2);
        let mut ech = Echelon::new(e2.len(), FieldArith::<Rational>::new());
        let mut out = Vec::new();
        for &c in self.matroid.circuits().iter().filter(|&&c| bits::len(c) == 3) {
            let mut v: SparseVec<Rational> = boundary(c)
                .into_iter()
                .map(|(f, s)| (e2.index(f).expect("2-set") as u32, rat(s)))
                .collect();
            v.sort_unstable_by_key(|e| e.0);
            if ech.insert(&v).is_some() {
                out.push(v);
            }
        }
        out
    }

    /// Dimensions of the quadratic closure `B = E / (I_2)` in degrees
    /// `0..=max_deg`, with `B_k = E_k / (I_2 ^ E_{k-2})`.
    pub fn quadratic_closure_dims(&self, max_deg: usize) -> Vec<usize> {
        let n = self.generators();
        let e2 = ExteriorBasis::new(n, 2);
        let rels = self.quadratic_relations();
        (0..=max_deg)
            .map(|k| {
                let ek = ExteriorBasis::new(n, k);
                if k < 2 || rels.is_empty() {
                    return ek.len();
                }
                let mut vectors = Vec::new();
                for t in bits::subsets_of_size(bits::full(n), k - 2) {
                    let mut v: Vec<(u32, Rational)> = Vec::new();
                    for g in &rels {
                        v.clear();
                        for (j, x) in g {
                            let f = e2.sets[*j as usize];
                            let sign = wedge_sign(f, t);
                            if sign != 0 {
                                v.push((ek.index(f | t).expect("k-set") as u32, x * rat(sign)));
                            }
                        }
                        v.sort_unstable_by_key(|e| e.0);
                        vectors.push(v.clone());
                    }
                }
                ek.len() - rank_of_vectors(vectors, ek.len(), &FieldArith::<Rational>::new())
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn three_lines() -> Matroid {
        Matroid::from_circuits(3, vec![0b111], Some(2)).unwrap()
    }

    #[test]
    fn signs() {
        assert_eq!(wedge_sign(0b01, 0b10), 1);
        assert_eq!(wedge_sign(0b10, 0b01), -1);
        assert_eq!(wedge_sign(0b110, 0b001), 1);
        assert_eq!(wedge_sign(0b1, 0b1), 0);
    }

    #[test]
    fn concurrent_lines_straighten() {
        let a = OsAlgebra::new(&three_lines());
        assert_eq!(a.dims(), vec![1, 3, 2]);
        assert_eq!(a.basis(2), &[0b011, 0b101]);
        // e2 e3 = e1 e3 - e1 e2
        assert_eq!(a.monomial(0b110), vec![(0, rat(-1)), (1, rat(1))]);
        assert_eq!(a.monomial(0b111), vec![]);
    }
}
