use std::collections::BTreeMap;

use super::scalar::Field;
use super::KernelError;

/// Sparse vector: strictly increasing indices, no stored zeros.
pub type SparseVec<E> = Vec<(u32, E)>;

/// Immutable sparse matrix stored by columns.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseMatrix<F> {
    rows: usize,
    cols: usize,
    columns: Vec<SparseVec<F>>,
}

impl<F: Field> SparseMatrix<F> {
    pub fn zero(rows: usize, cols: usize) -> Self {
        SparseMatrix { rows, cols, columns: vec![Vec::new(); cols] }
    }

    pub fn identity(n: usize) -> Self {
        let columns = (0..n).map(|i| vec![(i as u32, F::one())]).collect();
        SparseMatrix { rows: n, cols: n, columns }
    }

    /// Build from `(row, col, value)` triplets. Repeated positions are
    /// summed and zero results dropped.
    pub fn from_triplets(
        rows: usize,
        cols: usize,
        entries: impl IntoIterator<Item = (usize, usize, F)>,
    ) -> Result<Self, KernelError> {
        let mut acc: Vec<BTreeMap<u32, F>> = vec![BTreeMap::new(); cols];
        for (r, c, v) in entries {
            if r >= rows || c >= cols {
                return Err(KernelError::IndexOutOfRange { row: r, col: c, rows, cols });
            }
            let slot = acc[c].entry(r as u32).or_insert_with(F::zero);
            *slot = slot.clone() + v;
        }
        let columns = acc
            .into_iter()
            .map(|m| m.into_iter().filter(|(_, v)| !v.is_zero()).collect())
            .collect();
        Ok(SparseMatrix { rows, cols, columns })
    }

    /// Build from row-major dense data.
    pub fn from_dense(data: &[Vec<F>]) -> Self {
        let rows = data.len();
        let cols = data.first().map_or(0, Vec::len);
        let mut columns = vec![Vec::new(); cols];
        for (r, row) in data.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged dense matrix");
            for (c, v) in row.iter().enumerate() {
                if !v.is_zero() {
                    columns[c].push((r as u32, v.clone()));
                }
            }
        }
        SparseMatrix { rows, cols, columns }
    }

    /// Build from columns that already satisfy the sparse-vector invariant.
    pub fn from_columns(rows: usize, columns: Vec<SparseVec<F>>) -> Self {
        debug_assert!(columns.iter().all(|c| {
            c.windows(2).all(|w| w[0].0 < w[1].0)
                && c.iter().all(|(r, v)| (*r as usize) < rows && !v.is_zero())
        }));
        SparseMatrix { rows, cols: columns.len(), columns }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(Vec::len).sum()
    }

    pub fn column(&self, c: usize) -> &[(u32, F)] {
        &self.columns[c]
    }

    pub fn columns(&self) -> &[SparseVec<F>] {
        &self.columns
    }

    pub fn get(&self, r: usize, c: usize) -> F {
        match self.columns[c].binary_search_by_key(&(r as u32), |e| e.0) {
            Ok(i) => self.columns[c][i].1.clone(),
            Err(_) => F::zero(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(Vec::is_empty)
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &F)> {
        self.columns
            .iter()
            .enumerate()
            .flat_map(|(c, col)| col.iter().map(move |(r, v)| (*r as usize, c, v)))
    }

    pub fn transpose(&self) -> Self {
        let mut columns: Vec<SparseVec<F>> = vec![Vec::new(); self.rows];
        for (c, col) in self.columns.iter().enumerate() {
            for (r, v) in col {
                columns[*r as usize].push((c as u32, v.clone()));
            }
        }
        SparseMatrix { rows: self.cols, cols: self.rows, columns }
    }

    /// `self * other`
    pub fn mul(&self, other: &SparseMatrix<F>) -> Result<SparseMatrix<F>, KernelError> {
        if self.cols != other.rows {
            return Err(KernelError::ShapeMismatch {
                left: (self.rows, self.cols),
                right: (other.rows, other.cols),
            });
        }
        let columns = other
            .columns
            .iter()
            .map(|ocol| {
                let mut acc: BTreeMap<u32, F> = BTreeMap::new();
                for (k, w) in ocol {
                    for (r, v) in &self.columns[*k as usize] {
                        let slot = acc.entry(*r).or_insert_with(F::zero);
                        *slot = slot.clone() + v.clone() * w.clone();
                    }
                }
                acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
            })
            .collect();
        Ok(SparseMatrix { rows: self.rows, cols: other.cols, columns })
    }

    /// Matrix-vector product with a dense vector.
    pub fn apply(&self, x: &[F]) -> Vec<F> {
        assert_eq!(x.len(), self.cols);
        let mut y = vec![F::zero(); self.rows];
        for (c, col) in self.columns.iter().enumerate() {
            if x[c].is_zero() {
                continue;
            }
            for (r, v) in col {
                let r = *r as usize;
                y[r] = y[r].clone() + v.clone() * x[c].clone();
            }
        }
        y
    }

    /// Entrywise image in another field.
    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> SparseMatrix<G> {
        let columns = self
            .columns
            .iter()
            .map(|col| {
                col.iter()
                    .filter_map(|(r, v)| {
                        let w = f(v);
                        (!w.is_zero()).then_some((*r, w))
                    })
                    .collect()
            })
            .collect();
        SparseMatrix { rows: self.rows, cols: self.cols, columns }
    }

    pub fn to_dense(&self) -> Vec<Vec<F>> {
        let mut d = vec![vec![F::zero(); self.cols]; self.rows];
        for (r, c, v) in self.entries() {
            d[r][c] = v.clone();
        }
        d
    }
}
