//! Chains of solvable extensions, supersolvable deformation exponents and
//! the singular range.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arrangement::Matroid;
use crate::bits::{self, IndexSet};
use crate::series::Polynomial;

/// Which hyperplanes lie on a common codimension-2 flat.
#[derive(Debug, Clone)]
pub struct Collinearity {
    n: usize,
    pair_flat: Vec<IndexSet>,
}

impl Collinearity {
    pub fn new(m: &Matroid) -> Self {
        let n = m.ground_size();
        let mut pair_flat = vec![0; n * n];
        for &f in m.flats(2).flats(2) {
            for i in bits::iter(f) {
                for j in bits::iter(f) {
                    pair_flat[i * n + j] = f;
                }
            }
        }
        Collinearity { n, pair_flat }
    }

    /// Rank-2 flat spanned by two distinct hyperplanes.
    pub fn flat(&self, i: usize, j: usize) -> IndexSet {
        self.pair_flat[i * self.n + j]
    }

    /// Three distinct hyperplanes with `rk(H cap H' cap H'') = 2`.
    pub fn collinear(&self, i: usize, j: usize, k: usize) -> bool {
        i != j && j != k && i != k && bits::contains(self.flat(i, j), k)
    }
}

/// First violated condition of a solvable extension, with the hyperplanes
/// involved (0-based).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Violation {
    /// New `h` is collinear with two old hyperplanes.
    MixedCollinearity { new: usize, old: (usize, usize) },
    /// New `h, h2` have no collinear old hyperplane, or more than one.
    NoUniqueThird { new: (usize, usize), count: usize },
    /// The three values of `f` on a triple of new hyperplanes have rank 3.
    RankCondition { new: (usize, usize, usize) },
}

/// The map `f(H, H')` of a solvable extension, as `((H, H'), f)` with
/// `H < H'`.
pub type FMap = Vec<((usize, usize), usize)>;

/// Check the three conditions for `sub` inside `full`.
pub fn is_solvable_extension(sub: IndexSet, full: IndexSet, col: &Collinearity) -> Result<FMap, Violation> {
    assert!(bits::is_subset(sub, full) && sub != full, "extension must be proper");
    let new = bits::to_vec(full & !sub);
    for &h in &new {
        let old: Vec<usize> = bits::iter(sub).collect();
        for (a, &h1) in old.iter().enumerate() {
            for &h2 in &old[a + 1..] {
                if col.collinear(h, h1, h2) {
                    return Err(Violation::MixedCollinearity { new: h, old: (h1, h2) });
                }
            }
        }
    }
    let mut f: FMap = Vec::new();
    for (a, &h) in new.iter().enumerate() {
        for &h2 in &new[a + 1..] {
            let third = col.flat(h, h2) & sub;
            if bits::len(third) != 1 {
                return Err(Violation::NoUniqueThird { new: (h, h2), count: bits::len(third) });
            }
            f.push(((h, h2), bits::min(third).expect("one element")));
        }
    }
    let lookup = |i: usize, j: usize| -> usize {
        let key = (i.min(j), i.max(j));
        f.iter().find(|e| e.0 == key).expect("pair present").1
    };
    for (a, &h) in new.iter().enumerate() {
        for (b, &h2) in new.iter().enumerate().skip(a + 1) {
            for &h3 in &new[b + 1..] {
                let (x, y, z) = (lookup(h, h2), lookup(h, h3), lookup(h2, h3));
                let distinct = x != y && y != z && x != z;
                if distinct && !col.collinear(x, y, z) {
                    return Err(Violation::RankCondition { new: (h, h2, h3) });
                }
            }
        }
    }
    Ok(f)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum StepKind {
    Fibred,
    Singular,
}

/// `A_1 < A_2 < ... < A_m` with `A_1` a single hyperplane.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolvableChain {
    pub stages: Vec<IndexSet>,
    pub stage_ranks: Vec<usize>,
    pub step_kinds: Vec<StepKind>,
    pub step_sizes: Vec<usize>,
}

impl SolvableChain {
    fn from_stages(m: &Matroid, stages: Vec<IndexSet>) -> Self {
        let stage_ranks: Vec<usize> = stages.iter().map(|&s| m.rank_of(s)).collect();
        let step_kinds = stage_ranks
            .windows(2)
            .map(|w| if w[1] == w[0] { StepKind::Singular } else { StepKind::Fibred })
            .collect();
        let step_sizes = stages.windows(2).map(|w| bits::len(w[1] & !w[0])).collect();
        SolvableChain { stages, stage_ranks, step_kinds, step_sizes }
    }

    /// `d_1 = 1` followed by the step sizes.
    pub fn exponents(&self) -> Vec<usize> {
        std::iter::once(1).chain(self.step_sizes.iter().copied()).collect()
    }

    /// Hilbert series `prod_j (1 + d_j t)` of the supersolvable deformation.
    pub fn deformation_poincare(&self) -> Polynomial {
        Polynomial::from_exponents(&self.exponents())
    }

    pub fn is_supersolvable(&self) -> bool {
        self.step_kinds.iter().all(|k| *k == StepKind::Fibred)
    }
}

/// Search state shared by the chain enumerators.
struct Search<'a> {
    m: &'a Matroid,
    col: Collinearity,
    full: IndexSet,
    failed: HashSet<IndexSet>,
}

impl Search<'_> {
    fn successors(&self, stage: IndexSet) -> Vec<IndexSet> {
        let rest = self.full & !stage;
        let r = self.m.rank_of(stage);
        let mut out = Vec::new();
        for k in 1..=bits::len(rest) {
            for block in bits::subsets_of_size(rest, k) {
                let next = stage | block;
                if self.m.rank_of(next) <= r + 1 && is_solvable_extension(stage, next, &self.col).is_ok() {
                    out.push(next);
                }
            }
        }
        out
    }

    fn first(&mut self, path: &mut Vec<IndexSet>) -> bool {
        let stage = *path.last().expect("nonempty path");
        if stage == self.full {
            return true;
        }
        if self.failed.contains(&stage) {
            return false;
        }
        for next in self.successors(stage) {
            path.push(next);
            if self.first(path) {
                return true;
            }
            path.pop();
        }
        self.failed.insert(stage);
        false
    }

    /// Reaches the full set from `stage`; fills `failed` as a side effect.
    fn completes(&mut self, stage: IndexSet) -> bool {
        let mut path = vec![stage];
        self.first(&mut path)
    }

    fn all(&mut self, path: &mut Vec<IndexSet>, out: &mut Vec<Vec<IndexSet>>, limit: usize) {
        let stage = *path.last().expect("nonempty path");
        if out.len() >= limit {
            return;
        }
        if stage == self.full {
            out.push(path.clone());
            return;
        }
        for next in self.successors(stage) {
            if !self.completes(next) {
                continue;
            }
            path.push(next);
            self.all(path, out, limit);
            path.pop();
        }
    }
}

/// First chain in the search order: starting hyperplanes in index order,
/// extension blocks by size and then lexicographically. `None` when the
/// matroid is not hypersolvable.
pub fn find_solvable_chain(m: &Matroid) -> Option<SolvableChain> {
    let n = m.ground_size();
    if n == 0 {
        return None;
    }
    let mut search = Search { m, col: Collinearity::new(m), full: bits::full(n), failed: HashSet::new() };
    for start in 0..n {
        let mut path = vec![bits::singleton(start)];
        if search.first(&mut path) {
            return Some(SolvableChain::from_stages(m, path));
        }
    }
    None
}

/// Up to `limit` chains, in search order.
pub fn enumerate_chains(m: &Matroid, limit: usize) -> Vec<SolvableChain> {
    let n = m.ground_size();
    let mut search = Search { m, col: Collinearity::new(m), full: bits::full(n), failed: HashSet::new() };
    let mut out = Vec::new();
    for start in 0..n {
        let mut path = vec![bits::singleton(start)];
        search.all(&mut path, &mut out, limit);
    }
    out.into_iter().map(|s| SolvableChain::from_stages(m, s)).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SingularRange {
    pub c: usize,
    pub d: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SingularOutcome {
    Supersolvable,
    Range(SingularRange),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HypersolvableError {
    #[error("singular range ({c},{d}) violates 3 <= c <= d")]
    RangeBounds { c: usize, d: usize },
    #[error("chain has singular steps but the deformation has the same Hilbert series")]
    NoDisagreement,
}

/// `c` is the least degree where the deformation's Hilbert series differs
/// from `os_dims`; `d` is the rank at the last singular step.
pub fn singular_range(ch: &SolvableChain, os_dims: &[usize]) -> Result<SingularOutcome, HypersolvableError> {
    let Some(last) = ch.step_kinds.iter().rposition(|k| *k == StepKind::Singular) else {
        return Ok(SingularOutcome::Supersolvable);
    };
    let d = ch.stage_ranks[last];
    let hb = ch.deformation_poincare();
    let top = hb.0.len().max(os_dims.len());
    let c = (0..top)
        .find(|&k| hb.coeff(k) != os_dims.get(k).copied().unwrap_or(0) as i64)
        .ok_or(HypersolvableError::NoDisagreement)?;
    if !(3 <= c && c <= d) {
        return Err(HypersolvableError::RangeBounds { c, d });
    }
    Ok(SingularOutcome::Range(SingularRange { c, d }))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    Koszul,
    Length0,
    Length1,
    OutOfScope,
}

impl Verdict {
    /// Whether the splitting of the homotopy Lie algebra is available.
    pub fn applicable(self) -> bool {
        self != Verdict::OutOfScope
    }
}

pub fn hypothesis_verdict(outcome: Option<SingularOutcome>) -> Verdict {
    match outcome {
        None => Verdict::OutOfScope,
        Some(SingularOutcome::Supersolvable) => Verdict::Koszul,
        Some(SingularOutcome::Range(r)) => match r.d - r.c {
            0 => Verdict::Length0,
            1 => Verdict::Length1,
            _ => Verdict::OutOfScope,
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn concurrent_lines() {
        let m = Matroid::from_circuits(3, vec![0b111], Some(2)).unwrap();
        let col = Collinearity::new(&m);
        assert_eq!(is_solvable_extension(0b001, 0b111, &col), Ok(vec![((1, 2), 0)]));
        assert_eq!(
            is_solvable_extension(0b011, 0b111, &col),
            Err(Violation::MixedCollinearity { new: 2, old: (0, 1) })
        );
        let ch = find_solvable_chain(&m).unwrap();
        assert!(ch.is_supersolvable());
        assert_eq!(ch.exponents(), vec![1, 2]);
    }
}
