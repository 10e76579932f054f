//! Central hyperplane arrangements, their matroids and intersection lattices.

mod lattice;
mod matroid;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::bits::{self, IndexSet, MAX_GROUND};
use crate::kernel::scalar::{fmt_rational, Rational};

pub use lattice::IntersectionLattice;
pub use matroid::Matroid;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ArrangementError {
    #[error("zero row at index {index}")]
    ZeroRow { index: usize },
    #[error("duplicate hyperplane: rows {first} and {second} are proportional")]
    DuplicateHyperplane { first: usize, second: usize },
    #[error("row {index} has {found} coordinates, expected {expected}")]
    RowLength { index: usize, found: usize, expected: usize },
    #[error("at most {MAX_GROUND} hyperplanes are supported, got {0}")]
    TooLarge(usize),
    #[error("index {index} out of range for {n} hyperplanes")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("block {index} has {size} points, expected 4")]
    BadBlock { index: usize, size: usize },
    #[error("invalid matroid: {0}")]
    InvalidMatroid(String),
}

/// Central arrangement in `C^ell` given by normal vectors. Each normal is
/// scaled so its first nonzero coordinate is 1.
#[derive(Debug, Clone, PartialEq)]
pub struct Arrangement {
    ell: usize,
    normals: Vec<Vec<Rational>>,
    labels: Vec<String>,
}

/// Affine arrangement: row `(a, c)` is the hyperplane `a . x + c = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct AffineArrangement {
    pub dim: usize,
    pub rows: Vec<(Vec<Rational>, Rational)>,
}

fn normalize(row: &[Rational]) -> Option<Vec<Rational>> {
    let lead = row.iter().find(|x| !x.is_zero())?.clone();
    Some(row.iter().map(|x| x / &lead).collect())
}

impl Arrangement {
    pub fn new(ell: usize, rows: Vec<Vec<Rational>>) -> Result<Self, ArrangementError> {
        let labels = (1..=rows.len()).map(|i| format!("H{i}")).collect();
        Self::with_labels(ell, rows, labels)
    }

    pub fn with_labels(
        ell: usize,
        rows: Vec<Vec<Rational>>,
        labels: Vec<String>,
    ) -> Result<Self, ArrangementError> {
        if rows.len() > MAX_GROUND {
            return Err(ArrangementError::TooLarge(rows.len()));
        }
        assert_eq!(labels.len(), rows.len());
        let mut normals: Vec<Vec<Rational>> = Vec::with_capacity(rows.len());
        for (index, row) in rows.iter().enumerate() {
            if row.len() != ell {
                return Err(ArrangementError::RowLength { index, found: row.len(), expected: ell });
            }
            let v = normalize(row).ok_or(ArrangementError::ZeroRow { index })?;
            if let Some(first) = normals.iter().position(|w| *w == v) {
                return Err(ArrangementError::DuplicateHyperplane { first, second: index });
            }
            normals.push(v);
        }
        Ok(Arrangement { ell, normals, labels })
    }

    /// Coordinate hyperplanes of `C^n`.
    pub fn boolean(n: usize) -> Result<Self, ArrangementError> {
        let rows = (0..n)
            .map(|i| (0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect())
            .collect();
        Self::new(n, rows)
    }

    pub fn len(&self) -> usize {
        self.normals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.normals.is_empty()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ell
    }

    pub fn normals(&self) -> &[Vec<Rational>] {
        &self.normals
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Rank of the normals indexed by `s`.
    pub fn rank_of(&self, s: IndexSet) -> usize {
        let rows: Vec<&[Rational]> = bits::iter(s).map(|i| self.normals[i].as_slice()).collect();
        dense_rank(&rows)
    }

    pub fn rank(&self) -> usize {
        self.rank_of(bits::full(self.len()))
    }

    /// Matroid of the normals. Circuits are found by enumerating subsets up
    /// to size `rank + 1` that contain no smaller circuit.
    pub fn matroid(&self) -> Matroid {
        let n = self.len();
        let r = self.rank();
        let mut circuits: Vec<IndexSet> = Vec::new();
        for k in 1..=(r + 1).min(n) {
            for s in bits::subsets_of_size(bits::full(n), k) {
                if circuits.iter().any(|&c| bits::is_subset(c, s)) {
                    continue;
                }
                // every proper subset is independent here, so a set of size
                // r + 1 is automatically a circuit
                if k == r + 1 || self.rank_of(s) < k {
                    circuits.push(s);
                }
            }
        }
        Matroid::from_parts(n, r, circuits)
    }

    /// Homogenize an affine arrangement, appending the hyperplane at
    /// infinity as the last hyperplane.
    pub fn cone(aff: &AffineArrangement) -> Result<Self, ArrangementError> {
        let mut rows: Vec<Vec<Rational>> = aff
            .rows
            .iter()
            .map(|(a, c)| {
                let mut r = a.clone();
                r.push(c.clone());
                r
            })
            .collect();
        let mut inf = vec![Rational::zero(); aff.dim + 1];
        inf[aff.dim] = Rational::one();
        rows.push(inf);
        Self::new(aff.dim + 1, rows)
    }

    /// Send hyperplane `at` to infinity. The remaining hyperplanes keep their
    /// relative order.
    pub fn decone(&self, at: usize) -> Result<AffineArrangement, ArrangementError> {
        if at >= self.len() {
            return Err(ArrangementError::IndexOutOfRange { index: at, n: self.len() });
        }
        let alpha = &self.normals[at];
        let j = alpha.iter().position(|x| !x.is_zero()).expect("normals are nonzero");
        // chart alpha(x) = 1, solved for x_j (alpha_j = 1 after normalizing)
        let rows = self
            .normals
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != at)
            .map(|(_, beta)| {
                let a: Vec<Rational> = (0..self.ell)
                    .filter(|&k| k != j)
                    .map(|k| &beta[k] - &beta[j] * &alpha[k])
                    .collect();
                (a, beta[j].clone())
            })
            .collect();
        Ok(AffineArrangement { dim: self.ell - 1, rows })
    }

    /// Linear forms as text, one per hyperplane.
    pub fn describe(&self) -> Vec<String> {
        self.normals.iter().map(|v| v.iter().map(fmt_rational).collect::<Vec<_>>().join(" ")).collect()
    }
}

/// Rank of a small dense rational matrix given by rows.
pub(crate) fn dense_rank(rows: &[&[Rational]]) -> usize {
    let mut m: Vec<Vec<Rational>> = rows.iter().map(|r| r.to_vec()).collect();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&r| !m[r][c].is_zero()) else { continue };
        m.swap(rank, p);
        let inv = Rational::one() / &m[rank][c];
        for r in rank + 1..m.len() {
            if m[r][c].is_zero() {
                continue;
            }
            let f = &m[r][c] * &inv;
            for k in c..cols {
                let t = &f * &m[rank][k];
                m[r][k] -= t;
            }
        }
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    rank
}
