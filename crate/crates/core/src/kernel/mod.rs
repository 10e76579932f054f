//! Exact linear algebra: scalar fields, sparse matrices, ranks, kernels and
//! homology of finite complexes.

pub mod complex;
pub mod elim;
pub mod scalar;
pub mod sparse;

use num_prime::nt_funcs::is_prime64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

pub use complex::FiniteComplex;
pub use elim::{rank_of_vectors, Echelon};
pub use scalar::{Arith, Field, FieldArith, ModArith, Rational, Zp};
pub use sparse::{SparseMatrix, SparseVec};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum KernelError {
    #[error("entry ({row}, {col}) outside a {rows}x{cols} matrix")]
    IndexOutOfRange { row: usize, col: usize, rows: usize, cols: usize },
    #[error("cannot multiply {left:?} by {right:?}")]
    ShapeMismatch { left: (usize, usize), right: (usize, usize) },
    #[error("prime {p} divides a denominator")]
    PrimeDividesDenominator { p: u64 },
    #[error("composite of differentials into degree {degree} is nonzero")]
    NotAComplex { degree: usize },
}

/// Rank over the field of the entries.
pub fn rank<F: Field>(m: &SparseMatrix<F>) -> usize {
    let arith = FieldArith::<F>::new();
    if m.rows() <= m.cols() {
        rank_of_vectors(m.columns().to_vec(), m.rows(), &arith)
    } else {
        rank_of_vectors(m.transpose().columns().to_vec(), m.cols(), &arith)
    }
}

/// Rank of the reduction of a rational matrix modulo `p`.
pub fn modular_rank(m: &SparseMatrix<Rational>, p: u64) -> Result<usize, KernelError> {
    let arith = ModArith { p };
    let (src, dim) = if m.rows() <= m.cols() {
        (m.clone(), m.rows())
    } else {
        (m.transpose(), m.cols())
    };
    let mut vectors = Vec::with_capacity(src.cols());
    for col in src.columns() {
        let mut v = Vec::with_capacity(col.len());
        for (r, x) in col {
            let y = arith.from_rational(x).ok_or(KernelError::PrimeDividesDenominator { p })?;
            if y != 0 {
                v.push((*r, y));
            }
        }
        vectors.push(v);
    }
    Ok(rank_of_vectors(vectors, dim, &arith))
}

/// Basis of the right kernel `{x : m x = 0}`, one vector per free column.
pub fn nullspace<F: Field>(m: &SparseMatrix<F>) -> Vec<SparseVec<F>> {
    let arith = FieldArith::<F>::new();
    let mut ech = Echelon::new(m.cols(), arith);
    for row in m.transpose().columns() {
        ech.insert(row);
    }
    let nf = ech.coordinate_normal_forms();
    // x_p = sum_f nf(e_p)_f x_f for pivots p
    let free = ech.free_coordinates();
    let mut basis: Vec<SparseVec<F>> = free.iter().map(|&f| vec![(f, F::one())]).collect();
    let index_of: std::collections::HashMap<u32, usize> =
        free.iter().enumerate().map(|(i, f)| (*f, i)).collect();
    for (p, form) in nf.iter().enumerate() {
        if !ech.is_pivot(p as u32) {
            continue;
        }
        for (f, c) in form {
            basis[index_of[f]].push((p as u32, c.clone()));
        }
    }
    for v in basis.iter_mut() {
        v.sort_unstable_by_key(|e| e.0);
    }
    basis
}

/// `count` distinct primes drawn near 2^62 from a seeded generator.
pub fn random_primes(seed: u64, count: usize) -> Vec<u64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out: Vec<u64> = Vec::with_capacity(count);
    while out.len() < count {
        let mut c = ((1u64 << 62) + rng.gen_range(0..(1u64 << 40))) | 1;
        while !is_prime64(c) {
            c += 2;
        }
        if !out.contains(&c) {
            out.push(c);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::scalar::rat;
    use super::*;

    #[test]
    fn rank_and_kernel() {
        let m = SparseMatrix::from_dense(&[
            vec![rat(1), rat(2), rat(3)],
            vec![rat(2), rat(4), rat(6)],
            vec![rat(1), rat(0), rat(1)],
        ]);
        assert_eq!(rank(&m), 2);
        assert_eq!(modular_rank(&m, 101).unwrap(), 2);
        let k = nullspace(&m);
        assert_eq!(k.len(), 1);
        let dense: Vec<Rational> = (0..3)
            .map(|i| k[0].iter().find(|e| e.0 == i).map_or(rat(0), |e| e.1.clone()))
            .collect();
        assert!(m.apply(&dense).iter().all(|x| *x == rat(0)));
    }

    #[test]
    fn primes_are_reproducible() {
        let a = random_primes(7, 2);
        assert_eq!(a, random_primes(7, 2));
        assert!(a.iter().all(|p| is_prime64(*p) && *p > (1 << 62)));
        assert_ne!(a[0], a[1]);
    }
}
