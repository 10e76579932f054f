use hlie::io::lookup;
use hlie::os::OsAlgebra;
use hlie::series::Polynomial;

fn dims(key: &str) -> Vec<usize> {
    OsAlgebra::new(&lookup(key).unwrap().matroid()).dims()
}

#[test]
fn two_generic_seven() {
    assert_eq!(dims("ex_2gen7_a"), vec![1, 7, 21, 30, 15]);
    assert_eq!(dims("ex_2gen7_b"), vec![1, 7, 21, 30, 15]);
}

#[test]
fn block_designs() {
    for k in ["nandi_d1", "nandi_d2", "nandi_d3"] {
        assert_eq!(dims(k), vec![1, 10, 45, 105, 69]);
    }
}

#[test]
fn deconed_generic_slice_and_deformation() {
    let a = OsAlgebra::new(&lookup("ex_pres_A").unwrap().matroid()).poincare();
    assert_eq!(a.div_one_plus_t().unwrap(), Polynomial(vec![1, 8, 24]));
    let b = OsAlgebra::new(&lookup("ex_pres_B").unwrap().matroid()).poincare();
    assert_eq!(b.div_one_plus_t().unwrap(), Polynomial::from_exponents(&[2, 2, 2, 2]));
}

#[test]
fn boolean_dims_are_binomial() {
    let os = OsAlgebra::new(&hlie::arrangement::Matroid::boolean(5));
    assert_eq!(os.dims(), vec![1, 5, 10, 10, 5, 1]);
    assert_eq!(os.poincare(), Polynomial::from_exponents(&[1; 5]));
}

fn concurrent_lines() -> OsAlgebra {
    OsAlgebra::new(&hlie::arrangement::Matroid::from_circuits(3, vec![0b111], Some(2)).unwrap())
}

#[test]
fn products() {
    let os = concurrent_lines();
    let e = |i| os.generator(i);
    assert!(os.multiply(&e(0), &e(0)).coords.is_empty());
    // e2 e3 = e1 e3 - e1 e2 in the nbc basis {e1e2, e1e3}
    let r = hlie::kernel::scalar::rat;
    assert_eq!(os.multiply(&e(1), &e(2)).coords, vec![(0, r(-1)), (1, r(1))]);
    let top = os.multiply(&e(0), &e(1));
    assert!(os.multiply(&top, &e(2)).coords.is_empty());
    assert_eq!(os.dims(), vec![1, 3, 2]);
}

#[test]
fn quadratic_relations() {
    let r = hlie::kernel::scalar::rat;
    let cl = concurrent_lines().quadratic_relations();
    assert_eq!(cl.len(), 1);
    // e2e3 - e1e3 + e1e2 in the lexicographic basis e1e2, e1e3, e2e3
    assert_eq!(cl[0], vec![(0, r(1)), (1, r(-1)), (2, r(1))]);
    let two_gen = OsAlgebra::new(&lookup("ex_2gen7_a").unwrap().matroid());
    assert!(two_gen.quadratic_relations().is_empty());
    assert_eq!(two_gen.quadratic_closure_dims(7), vec![1, 7, 21, 35, 35, 21, 7, 1]);
    let a = OsAlgebra::new(&lookup("ex_pres_A").unwrap().matroid());
    // dim E_2 - dim B_2 with h(B) = (1+t)(1+2t)^4
    assert_eq!(a.quadratic_relations().len(), 36 - 32);
    let expected = Polynomial::from_exponents(&[1, 2, 2, 2, 2]);
    let closure: Vec<i64> = a.quadratic_closure_dims(5).iter().map(|&d| d as i64).collect();
    assert_eq!(closure, expected.0);
    let b = OsAlgebra::new(&lookup("ex_pres_B").unwrap().matroid());
    assert_eq!(b.quadratic_closure_dims(5), b.dims());
}
