use log::warn;

use super::{ArrangementError, IntersectionLattice};
use crate::bits::{self, IndexSet, MAX_GROUND};

/// Simple matroid on `0..n` given by its circuits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matroid {
    n: usize,
    rank: usize,
    circuits: Vec<IndexSet>,
}

/// Exhaustive axiom checks are limited to ground sets of this size.
const VALIDATION_LIMIT: usize = 12;

impl Matroid {
    pub(crate) fn from_parts(n: usize, rank: usize, mut circuits: Vec<IndexSet>) -> Self {
        circuits.sort_by_key(|&c| (bits::len(c), bits::to_vec(c)));
        Matroid { n, rank, circuits }
    }

    /// Build from circuits, checking incomparability and (for small ground
    /// sets) the circuit elimination axiom. The rank is derived from the
    /// circuits and compared with `declared_rank` when given.
    pub fn from_circuits(
        n: usize,
        circuits: Vec<IndexSet>,
        declared_rank: Option<usize>,
    ) -> Result<Self, ArrangementError> {
        if n > MAX_GROUND {
            return Err(ArrangementError::TooLarge(n));
        }
        let ground = bits::full(n);
        for &c in &circuits {
            if c == 0 || !bits::is_subset(c, ground) {
                return Err(ArrangementError::InvalidMatroid(format!(
                    "circuit {} is empty or outside the ground set",
                    bits::display(c)
                )));
            }
            if bits::len(c) < 3 {
                return Err(ArrangementError::InvalidMatroid(format!(
                    "circuit {} would create a loop or parallel pair",
                    bits::display(c)
                )));
            }
        }
        for (i, &a) in circuits.iter().enumerate() {
            for &b in &circuits[i + 1..] {
                if bits::is_subset(a, b) || bits::is_subset(b, a) {
                    return Err(ArrangementError::InvalidMatroid(format!(
                        "circuits {} and {} are comparable",
                        bits::display(a),
                        bits::display(b)
                    )));
                }
            }
        }
        if n <= VALIDATION_LIMIT {
            check_elimination(&circuits)?;
        } else {
            warn!("ground set of size {n}: circuit axioms not verified");
        }
        let mut m = Self::from_parts(n, 0, circuits);
        m.rank = m.rank_of(ground);
        if let Some(r) = declared_rank {
            if r != m.rank {
                return Err(ArrangementError::InvalidMatroid(format!(
                    "declared rank {r} but the circuits give rank {}",
                    m.rank
                )));
            }
        }
        Ok(m)
    }

    /// Free matroid: no circuits.
    pub fn boolean(n: usize) -> Self {
        Matroid { n, rank: n, circuits: Vec::new() }
    }

    /// Rank-4 matroid whose circuits are the given 4-point blocks together
    /// with every 5-set that contains no block.
    pub fn from_block_design(blocks: &[IndexSet], n: usize) -> Result<Self, ArrangementError> {
        for (index, &b) in blocks.iter().enumerate() {
            if bits::len(b) != 4 {
                return Err(ArrangementError::BadBlock { index, size: bits::len(b) });
            }
            if !bits::is_subset(b, bits::full(n)) {
                let i = bits::max(b).unwrap_or(0);
                return Err(ArrangementError::IndexOutOfRange { index: i, n });
            }
        }
        let mut circuits: Vec<IndexSet> = blocks.to_vec();
        circuits.sort_unstable();
        circuits.dedup();
        for s in bits::subsets_of_size(bits::full(n), 5) {
            if !blocks.iter().any(|&b| bits::is_subset(b, s)) {
                circuits.push(s);
            }
        }
        Self::from_circuits(n, circuits, if n >= 4 { Some(4) } else { None })
    }

    pub fn ground_size(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Circuits sorted by size, then lexicographically.
    pub fn circuits(&self) -> &[IndexSet] {
        &self.circuits
    }

    pub fn is_independent(&self, s: IndexSet) -> bool {
        !self.circuits.iter().any(|&c| bits::is_subset(c, s))
    }

    pub fn rank_of(&self, s: IndexSet) -> usize {
        let mut basis: IndexSet = 0;
        for i in bits::iter(s) {
            let t = basis | bits::singleton(i);
            if !self.circuits.iter().any(|&c| bits::contains(c, i) && bits::is_subset(c, t)) {
                basis = t;
            }
        }
        bits::len(basis)
    }

    /// Smallest flat containing `s`.
    pub fn closure(&self, s: IndexSet) -> IndexSet {
        let r = self.rank_of(s);
        let mut out = s;
        for i in 0..self.n {
            if !bits::contains(s, i) && self.rank_of(s | bits::singleton(i)) == r {
                out |= bits::singleton(i);
            }
        }
        out
    }

    /// Flats of rank at most `max_rank`.
    pub fn flats(&self, max_rank: usize) -> IntersectionLattice {
        IntersectionLattice::build(self, max_rank)
    }

    /// No three hyperplanes meet in codimension 2, i.e. every circuit has at
    /// least four elements.
    pub fn two_generic(&self) -> bool {
        self.circuits.iter().all(|&c| bits::len(c) >= 4)
    }
}

fn check_elimination(circuits: &[IndexSet]) -> Result<(), ArrangementError> {
    for (i, &a) in circuits.iter().enumerate() {
        for &b in &circuits[i + 1..] {
            let union = a | b;
            for e in bits::iter(a & b) {
                let target = union & !bits::singleton(e);
                if !circuits.iter().any(|&c| bits::is_subset(c, target)) {
                    return Err(ArrangementError::InvalidMatroid(format!(
                        "elimination fails for {} and {} at {}",
                        bits::display(a),
                        bits::display(b),
                        e + 1
                    )));
                }
            }
        }
    }
    Ok(())
}
