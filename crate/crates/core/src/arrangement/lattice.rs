use std::collections::BTreeSet;

use super::Matroid;
use crate::bits::{self, IndexSet};

/// Flats of a matroid grouped by rank, up to a rank bound. Within a rank,
/// flats are ordered lexicographically by their sorted elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntersectionLattice {
    n: usize,
    by_rank: Vec<Vec<IndexSet>>,
}

fn lex_key(s: IndexSet) -> Vec<usize> {
    bits::to_vec(s)
}

impl IntersectionLattice {
    pub(crate) fn build(m: &Matroid, max_rank: usize) -> Self {
        let max_rank = max_rank.min(m.rank());
        let mut by_rank: Vec<Vec<IndexSet>> = vec![vec![m.closure(0)]];
        for _ in 0..max_rank {
            let prev = by_rank.last().expect("nonempty");
            let mut next: BTreeSet<Vec<usize>> = BTreeSet::new();
            for &f in prev {
                for h in 0..m.ground_size() {
                    if !bits::contains(f, h) {
                        next.insert(lex_key(m.closure(f | bits::singleton(h))));
                    }
                }
            }
            by_rank.push(next.into_iter().map(bits::from_indices).collect());
        }
        IntersectionLattice { n: m.ground_size(), by_rank }
    }

    pub fn ground_size(&self) -> usize {
        self.n
    }

    pub fn max_rank(&self) -> usize {
        self.by_rank.len() - 1
    }

    /// Flats of rank `k`; empty beyond the computed bound.
    pub fn flats(&self, k: usize) -> &[IndexSet] {
        self.by_rank.get(k).map_or(&[], Vec::as_slice)
    }

    /// Rank of a flat present in the lattice.
    pub fn rank_of_flat(&self, f: IndexSet) -> Option<usize> {
        self.by_rank.iter().position(|v| v.contains(&f))
    }

    /// The rank-2 flat containing two distinct hyperplanes.
    pub fn join2(&self, i: usize, j: usize) -> Option<IndexSet> {
        let pair = bits::singleton(i) | bits::singleton(j);
        self.flats(2).iter().copied().find(|&f| bits::is_subset(pair, f))
    }
}
