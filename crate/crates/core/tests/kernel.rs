use hlie::kernel::scalar::rat;
use hlie::kernel::*;

fn dense(rows: &[&[i64]]) -> SparseMatrix<Rational> {
    SparseMatrix::from_dense(&rows.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect::<Vec<_>>())
}

#[test]
fn ranks() {
    assert_eq!(rank(&SparseMatrix::<Rational>::identity(3)), 3);
    assert_eq!(rank(&SparseMatrix::<Rational>::zero(4, 7)), 0);
    assert_eq!(rank(&dense(&[&[1, 2], &[2, 4], &[1, 1]])), 2);
}

#[test]
fn modular_ranks() {
    assert_eq!(modular_rank(&SparseMatrix::identity(3), 7).unwrap(), 3);
    let two = dense(&[&[2]]);
    assert_eq!(modular_rank(&two, 2).unwrap(), 0);
    assert_eq!(rank(&two), 1);
    assert_eq!(modular_rank(&dense(&[&[1, 2], &[2, 4]]), 101).unwrap(), 1);
    let half = SparseMatrix::from_dense(&[vec![hlie::kernel::scalar::ratio(1, 2)]]);
    assert_eq!(modular_rank(&half, 2), Err(KernelError::PrimeDividesDenominator { p: 2 }));
}

#[test]
fn prime_fields_share_the_generic_code() {
    let m = SparseMatrix::from_dense(&[vec![Zp::<5>::new(1), Zp::new(2)], vec![Zp::new(3), Zp::new(1)]]);
    // det = 1 - 6 = -5 = 0 mod 5
    assert_eq!(rank(&m), 1);
    assert_eq!(nullspace(&m).len(), 1);
}

#[test]
fn homology() {
    let c = FiniteComplex::new(vec![2, 3], vec![SparseMatrix::<Rational>::zero(3, 2)]).unwrap();
    assert_eq!(c.homology_dims(), vec![2, 3]);
    let id = FiniteComplex::new(vec![1, 1], vec![SparseMatrix::<Rational>::identity(1)]).unwrap();
    assert_eq!(id.homology_dims(), vec![0, 0]);
    // Koszul complex of k[x, y] in weight 2: S_2 -> S_1 (x) V -> Lambda^2 V, exact
    let d0 = dense(&[&[1, 0, 0], &[0, 1, 0], &[0, 1, 0], &[0, 0, 1]]);
    let d1 = dense(&[&[0, 1, -1, 0]]);
    let k = FiniteComplex::new(vec![3, 4, 1], vec![d0, d1]).unwrap();
    assert_eq!(k.homology_dims(), vec![0, 0, 0]);
    assert_eq!(k.euler_characteristic(), 0);
}

#[test]
fn rejects_non_complexes() {
    let d = SparseMatrix::<Rational>::identity(1);
    assert_eq!(
        FiniteComplex::new(vec![1, 1, 1], vec![d.clone(), d]).unwrap_err(),
        KernelError::NotAComplex { degree: 2 }
    );
    assert!(matches!(
        FiniteComplex::new(vec![2, 1], vec![SparseMatrix::<Rational>::identity(1)]),
        Err(KernelError::ShapeMismatch { .. })
    ));
}

#[test]
fn triplet_bounds() {
    let e = SparseMatrix::from_triplets(2, 2, [(2, 0, rat(1))]).unwrap_err();
    assert!(matches!(e, KernelError::IndexOutOfRange { .. }));
}
