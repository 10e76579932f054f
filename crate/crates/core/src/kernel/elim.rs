//! Sparse Gaussian elimination.
//!
//! Two routines live here. [`rank_of_vectors`] is the hot path: it only
//! counts pivots, processes vectors sparsest-first and picks each pivot in
//! the coordinate that occurs in the fewest unprocessed vectors (a Markowitz
//! style fill heuristic). [`Echelon`] keeps a deterministic echelon form with
//! pivot at the largest coordinate, which gives reproducible quotient bases
//! and normal forms.

use std::cmp::Reverse;
use std::collections::{BTreeMap, BinaryHeap};

use super::scalar::Arith;
use super::sparse::SparseVec;

const NONE: u32 = u32::MAX;

/// Rank of the span of `vectors`, all living in a space of dimension `dim`.
pub fn rank_of_vectors<A: Arith>(vectors: Vec<SparseVec<A::E>>, dim: usize, arith: &A) -> usize {
    let mut vectors: Vec<_> = vectors.into_iter().filter(|v| !v.is_empty()).collect();
    if vectors.is_empty() || dim == 0 {
        return 0;
    }
    let mut remaining = vec![0u32; dim];
    for v in &vectors {
        for (i, _) in v {
            remaining[*i as usize] += 1;
        }
    }
    vectors.sort_by_key(Vec::len);

    let mut pivot_of = vec![NONE; dim];
    let mut pivot_row: Vec<u32> = Vec::new();
    let mut pivots: Vec<SparseVec<A::E>> = Vec::new();
    let mut queued: Vec<bool> = Vec::new();

    let mut acc: Vec<A::E> = vec![arith.zero(); dim];
    let mut touched_flag = vec![false; dim];
    let mut touched: Vec<u32> = Vec::new();
    let mut heap: BinaryHeap<Reverse<u32>> = BinaryHeap::new();

    for v in vectors {
        if pivots.len() == dim {
            break;
        }
        for (i, x) in &v {
            let iu = *i as usize;
            remaining[iu] -= 1;
            acc[iu] = x.clone();
            touched_flag[iu] = true;
            touched.push(*i);
            let k = pivot_of[iu];
            if k != NONE && !queued[k as usize] {
                queued[k as usize] = true;
                heap.push(Reverse(k));
            }
        }
        while let Some(Reverse(k)) = heap.pop() {
            let ku = k as usize;
            queued[ku] = false;
            let r = pivot_row[ku] as usize;
            if arith.is_zero(&acc[r]) {
                continue;
            }
            let c = acc[r].clone();
            for (j, val) in &pivots[ku] {
                let ju = *j as usize;
                if !touched_flag[ju] {
                    touched_flag[ju] = true;
                    touched.push(*j);
                }
                arith.sub_mul(&mut acc[ju], &c, val);
                let pk = pivot_of[ju];
                if pk != NONE && pk != k && !queued[pk as usize] {
                    queued[pk as usize] = true;
                    heap.push(Reverse(pk));
                }
            }
        }

        let mut reduced: SparseVec<A::E> = Vec::new();
        for &j in &touched {
            let ju = j as usize;
            touched_flag[ju] = false;
            if !arith.is_zero(&acc[ju]) {
                reduced.push((j, std::mem::replace(&mut acc[ju], arith.zero())));
            }
        }
        touched.clear();
        if reduced.is_empty() {
            continue;
        }
        reduced.sort_unstable_by_key(|e| e.0);
        let (pos, _) = reduced
            .iter()
            .enumerate()
            .min_by_key(|(_, (j, _))| (remaining[*j as usize], *j))
            .expect("nonempty");
        let inv = arith.inv(&reduced[pos].1);
        for e in reduced.iter_mut() {
            e.1 = arith.mul(&e.1, &inv);
        }
        let row = reduced[pos].0;
        pivot_of[row as usize] = pivots.len() as u32;
        pivot_row.push(row);
        queued.push(false);
        pivots.push(reduced);
    }
    pivots.len()
}

/// Echelon basis of a growing subspace, pivot at the largest coordinate.
///
/// Optionally tracks every stored row as a combination of the inserted
/// vectors so that membership queries can return coefficients.
#[derive(Debug, Clone)]
pub struct Echelon<A: Arith> {
    arith: A,
    dim: usize,
    pivot_of: BTreeMap<u32, usize>,
    rows: Vec<SparseVec<A::E>>,
    combos: Option<Vec<SparseVec<A::E>>>,
    inserted: usize,
}

type Acc<E> = BTreeMap<u32, E>;

impl<A: Arith + Clone> Echelon<A> {
    pub fn new(dim: usize, arith: A) -> Self {
        Echelon { arith, dim, pivot_of: BTreeMap::new(), rows: Vec::new(), combos: None, inserted: 0 }
    }

    pub fn with_tracking(dim: usize, arith: A) -> Self {
        let mut e = Self::new(dim, arith);
        e.combos = Some(Vec::new());
        e
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_pivot(&self, i: u32) -> bool {
        self.pivot_of.contains_key(&i)
    }

    /// Coordinates that are not pivots, in increasing order.
    pub fn free_coordinates(&self) -> Vec<u32> {
        (0..self.dim as u32).filter(|i| !self.pivot_of.contains_key(i)).collect()
    }

    fn add_scaled(&self, acc: &mut Acc<A::E>, c: &A::E, v: &[(u32, A::E)]) {
        for (j, x) in v {
            let slot = acc.entry(*j).or_insert_with(|| self.arith.zero());
            self.arith.sub_mul(slot, c, x);
            if self.arith.is_zero(slot) {
                acc.remove(j);
            }
        }
    }

    /// Reduce the leading part of `v`; returns the remainder, whose largest
    /// coordinate (if any) is not a pivot, and the combination used.
    fn reduce_leading(&self, v: &[(u32, A::E)]) -> (Acc<A::E>, Acc<A::E>) {
        let mut acc: Acc<A::E> = v.iter().filter(|(_, x)| !self.arith.is_zero(x)).cloned().collect();
        let mut combo: Acc<A::E> = BTreeMap::new();
        while let Some((&lead, c)) = acc.iter().next_back() {
            let Some(&k) = self.pivot_of.get(&lead) else { break };
            let c = c.clone();
            self.add_scaled(&mut acc, &c, &self.rows[k]);
            if let Some(combos) = &self.combos {
                self.add_scaled(&mut combo, &c, &combos[k]);
            }
        }
        (acc, combo)
    }

    /// Insert a vector; returns its new pivot coordinate when independent.
    pub fn insert(&mut self, v: &[(u32, A::E)]) -> Option<u32> {
        let id = self.inserted as u32;
        self.inserted += 1;
        let (acc, mut combo) = self.reduce_leading(v);
        let (&lead, lc) = acc.iter().next_back()?;
        let inv = self.arith.inv(lc);
        let row: SparseVec<A::E> = acc.iter().map(|(j, x)| (*j, self.arith.mul(x, &inv))).collect();
        if let Some(combos) = &mut self.combos {
            // acc = e_id + combo in terms of inserted vectors
            combo.insert(id, self.arith.one());
            let c = combo.into_iter().map(|(j, x)| (j, self.arith.mul(&x, &inv))).collect();
            combos.push(c);
        }
        self.pivot_of.insert(lead, self.rows.len());
        self.rows.push(row);
        Some(lead)
    }

    /// Whether `v` lies in the span.
    pub fn contains(&self, v: &[(u32, A::E)]) -> bool {
        self.normal_form(v).is_empty()
    }

    /// Fully reduced remainder of `v`: supported on free coordinates only.
    pub fn normal_form(&self, v: &[(u32, A::E)]) -> SparseVec<A::E> {
        let mut acc: Acc<A::E> = v.iter().filter(|(_, x)| !self.arith.is_zero(x)).cloned().collect();
        let mut out: Acc<A::E> = BTreeMap::new();
        while let Some((&lead, _)) = acc.iter().next_back() {
            let c = acc.remove(&lead).expect("present");
            match self.pivot_of.get(&lead) {
                Some(&k) => {
                    let row = &self.rows[k];
                    // leading entry of the row is 1 at `lead`; skip it
                    self.add_scaled(&mut acc, &c, &row[..row.len() - 1]);
                }
                None => {
                    out.insert(lead, c);
                }
            }
        }
        out.into_iter().collect()
    }

    /// Coefficients expressing `v` in the inserted vectors (by insertion
    /// order), or `None` if `v` is outside the span. Requires tracking.
    pub fn solve(&self, v: &[(u32, A::E)]) -> Option<SparseVec<A::E>> {
        assert!(self.combos.is_some(), "solve requires a tracking echelon");
        let (acc, combo) = self.reduce_leading(v);
        if !acc.is_empty() {
            return None;
        }
        // acc = v + combo in terms of inserted vectors, and acc is zero
        Some(combo.into_iter().map(|(j, x)| (j, self.arith.neg(&x))).collect())
    }

    /// Normal form of every coordinate vector `e_i`, i.e. the projection onto
    /// the quotient expressed in free coordinates.
    pub fn coordinate_normal_forms(&self) -> Vec<SparseVec<A::E>> {
        let mut nf: Vec<SparseVec<A::E>> = Vec::with_capacity(self.dim);
        let one = self.arith.one();
        for i in 0..self.dim as u32 {
            match self.pivot_of.get(&i) {
                None => nf.push(vec![(i, one.clone())]),
                Some(&k) => {
                    let row = &self.rows[k];
                    let mut acc: Acc<A::E> = BTreeMap::new();
                    for (j, x) in &row[..row.len() - 1] {
                        // e_i = -sum_j x_j e_j modulo the span
                        self.add_scaled(&mut acc, x, &nf[*j as usize]);
                    }
                    nf.push(acc.into_iter().collect());
                }
            }
        }
        nf
    }
}
