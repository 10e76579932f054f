use super::scalar::Field;
use super::sparse::SparseMatrix;
use super::{rank, KernelError};

/// Bounded complex of finite-dimensional spaces `C_0 -> C_1 -> ... -> C_k`.
/// `differential(i)` maps `C_i` to `C_{i+1}`, so it has `dims[i]` columns.
#[derive(Debug, Clone)]
pub struct FiniteComplex<F> {
    dims: Vec<usize>,
    diffs: Vec<SparseMatrix<F>>,
}

impl<F: Field> FiniteComplex<F> {
    /// Validates shapes and that consecutive differentials compose to zero.
    pub fn new(dims: Vec<usize>, diffs: Vec<SparseMatrix<F>>) -> Result<Self, KernelError> {
        assert_eq!(diffs.len() + 1, dims.len().max(1), "need one differential between consecutive terms");
        for (i, d) in diffs.iter().enumerate() {
            if d.cols() != dims[i] || d.rows() != dims[i + 1] {
                return Err(KernelError::ShapeMismatch {
                    left: (dims[i + 1], dims[i]),
                    right: (d.rows(), d.cols()),
                });
            }
        }
        for i in 1..diffs.len() {
            if !diffs[i].mul(&diffs[i - 1])?.is_zero() {
                return Err(KernelError::NotAComplex { degree: i + 1 });
            }
        }
        Ok(FiniteComplex { dims, diffs })
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn differential(&self, i: usize) -> &SparseMatrix<F> {
        &self.diffs[i]
    }

    /// `dim H_i` for every term.
    pub fn homology_dims(&self) -> Vec<usize> {
        let ranks: Vec<usize> = self.diffs.iter().map(rank).collect();
        (0..self.dims.len())
            .map(|i| {
                let out = ranks.get(i).copied().unwrap_or(0);
                let inc = if i == 0 { 0 } else { ranks[i - 1] };
                self.dims[i] - out - inc
            })
            .collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        alternating_sum(&self.dims)
    }
}

pub fn alternating_sum(v: &[usize]) -> i64 {
    v.iter()
        .enumerate()
        .map(|(i, d)| if i % 2 == 0 { *d as i64 } else { -(*d as i64) })
        .sum()
}
