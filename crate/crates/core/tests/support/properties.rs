// Shared by the property tests and the acceptance run.

use std::collections::BTreeMap;

use hlie::arrangement::{Arrangement, Matroid};
use hlie::bits;
use hlie::flags::{boundary_squared_vanishes, f_pairing, FlagLattice};
use hlie::homotopy::linear_strand_complex;
use hlie::hypersolvable::{find_solvable_chain, singular_range, SingularOutcome};
use hlie::kernel::scalar::rat;
use hlie::kernel::{modular_rank, nullspace, rank, FieldArith, FiniteComplex, Rational, SparseMatrix};
use hlie::os::{OsAlgebra, OsElement};
use hlie::quadratic::{enveloping_of_holonomy, koszul_numerics_check};
use hlie::series::{pbw_expand, pbw_lie_ranks};
use num_bigint::BigInt;
use num_traits::Zero;
use proptest::prelude::*;

/// Each property with a printable name.
pub const PROPERTIES: &[(&str, fn())] = &[
    ("rank + nullity, modular rank", rank_nullity_and_modular_rank),
    ("homology and Euler characteristic", homology_of_conjugated_complexes),
    ("nbc dims under reordering", nbc_dims_do_not_depend_on_order),
    ("OS commutativity and associativity", os_products),
    ("linear strand d^2 = 0", linear_strand_is_a_complex),
    ("flag d^2 = 0 and contraction", flag_boundary_and_contraction),
    ("Koszul numerics, chordal graphs", chordal_graphic_arrangements_are_koszul),
    ("3 <= c <= d on generic slices", generic_slices_have_a_singular_range),
    ("PBW round trip", pbw_round_trip),
];

fn config() -> ProptestConfig {
    // no regression files: the suite is compiled into more than one crate
    ProptestConfig { cases: 100, failure_persistence: None, ..ProptestConfig::default() }
}

/// Central arrangements in dimension `dim` with small integer normals.
fn arrangement(dim: usize, max_n: usize) -> impl Strategy<Value = Arrangement> {
    prop::collection::vec(prop::collection::vec(-2i64..=2, dim), dim..=max_n).prop_filter_map("degenerate", move |rows| {
        let mut seen: Vec<Vec<Rational>> = Vec::new();
        for r in rows {
            let Some(lead) = r.iter().copied().find(|&x| x != 0) else { continue };
            let v: Vec<Rational> = r.iter().map(|&x| Rational::new(x.into(), lead.into())).collect();
            if !seen.contains(&v) {
                seen.push(v);
            }
        }
        let a = Arrangement::new(dim, seen).ok()?;
        (a.rank() == dim).then_some(a)
    })
}

/// Edges of a chordal graph: each new vertex is joined to a subset of a
/// clique that already exists.
fn chordal_graph(max_vertices: usize) -> impl Strategy<Value = (usize, Vec<(usize, usize)>)> {
    prop::collection::vec((any::<prop::sample::Index>(), any::<u64>()), 2..max_vertices).prop_map(|steps| {
        let mut cliques: Vec<Vec<usize>> = vec![vec![0]];
        let mut edges = Vec::new();
        for (v, (pick, mask)) in steps.into_iter().enumerate() {
            let v = v + 1;
            let base = pick.get(&cliques).clone();
            // keep at least one neighbour so the graph stays connected
            let mut nb: Vec<usize> = base.iter().enumerate().filter(|(k, _)| mask >> k & 1 == 1).map(|(_, &u)| u).collect();
            if nb.is_empty() {
                nb.push(base[0]);
            }
            edges.extend(nb.iter().map(|&u| (u, v)));
            nb.push(v);
            cliques.push(nb);
        }
        (cliques.len(), edges)
    })
}

fn graphic(vertices: usize, edges: &[(usize, usize)]) -> Arrangement {
    let rows = edges
        .iter()
        .map(|&(u, v)| {
            let mut r = vec![rat(0); vertices];
            r[u] = rat(1);
            r[v] = rat(-1);
            r
        })
        .collect();
    Arrangement::new(vertices, rows).unwrap()
}

/// Rank-`ell` truncation: circuits of size at most `ell + 1` together with
/// the independent `(ell + 1)`-sets.
fn truncate(m: &Matroid, ell: usize) -> Matroid {
    let mut circuits: Vec<_> = m.circuits().iter().copied().filter(|&c| bits::len(c) <= ell + 1).collect();
    for s in bits::subsets_of_size(bits::full(m.ground_size()), ell + 1) {
        if m.is_independent(s) {
            circuits.push(s);
        }
    }
    Matroid::from_circuits(m.ground_size(), circuits, Some(ell)).unwrap()
}

fn element(os: &OsAlgebra, degree: usize, coefs: &[i64]) -> OsElement {
    let coords = coefs
        .iter()
        .take(os.dim(degree))
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(i, &c)| (i as u32, rat(c)))
        .collect();
    OsElement { degree, coords }
}

fn negate(x: &OsElement) -> OsElement {
    OsElement { degree: x.degree, coords: x.coords.iter().map(|(i, c)| (*i, -c.clone())).collect() }
}

/// Elementary matrix `I + c e_{ab}` and its inverse.
fn elementary(n: usize, a: usize, b: usize, c: i64) -> (SparseMatrix<Rational>, SparseMatrix<Rational>) {
    let mk = |c: i64| {
        let mut t: Vec<(usize, usize, Rational)> = (0..n).map(|i| (i, i, rat(1))).collect();
        t.push((a, b, rat(c)));
        SparseMatrix::from_triplets(n, n, t).unwrap()
    };
    (mk(c), mk(-c))
}

proptest! {
    #![proptest_config(config())]

    fn rank_nullity_and_modular_rank(rows in 1usize..6, data in prop::collection::vec(-3i64..=3, 36), cols in 1usize..6) {
        let dense: Vec<Vec<Rational>> = (0..rows).map(|i| (0..cols).map(|j| rat(data[i * 6 + j])).collect()).collect();
        let m = SparseMatrix::from_dense(&dense);
        let r = rank(&m);
        let ker = nullspace(&m);
        prop_assert_eq!(r + ker.len(), cols);
        for v in &ker {
            let mut x = vec![rat(0); cols];
            for (i, c) in v {
                x[*i as usize] = c.clone();
            }
            prop_assert!(m.apply(&x).iter().all(|e| e.is_zero()));
        }
        // every nonzero minor is below the Hadamard bound, far under p
        prop_assert_eq!(modular_rank(&m, 1_000_000_007).unwrap(), r);
    }

    fn homology_of_conjugated_complexes(
        acyclic in prop::collection::vec(0usize..3, 3),
        h in prop::collection::vec(0usize..3, 4),
        ops in prop::collection::vec((any::<prop::sample::Index>(), any::<prop::sample::Index>(), -2i64..=2), 12),
    ) {
        // term i = K_{i-1} + K_i + H_i, with d the identity K_i -> K_i
        let k = |i: usize| if i < 3 { acyclic[i] } else { 0 };
        let km = |i: usize| if i == 0 { 0 } else { acyclic[i - 1] };
        let dims: Vec<usize> = (0..4).map(|i| km(i) + k(i) + h[i]).collect();
        let mut change = Vec::new();
        for (i, &n) in dims.iter().enumerate() {
            let mut p = SparseMatrix::identity(n);
            let mut pinv = SparseMatrix::identity(n);
            if n > 1 {
                for (a, b, c) in ops.iter().skip(i * 3).take(3) {
                    let (a, b) = (a.index(n), b.index(n));
                    if a != b {
                        let (e, einv) = elementary(n, a, b, *c);
                        p = e.mul(&p).unwrap();
                        pinv = pinv.mul(&einv).unwrap();
                    }
                }
            }
            change.push((p, pinv));
        }
        let mut diffs = Vec::new();
        for i in 0..3 {
            let t: Vec<(usize, usize, Rational)> = (0..k(i)).map(|j| (j, km(i) + j, rat(1))).collect();
            let d = SparseMatrix::from_triplets(dims[i + 1], dims[i], t).unwrap();
            diffs.push(change[i + 1].0.mul(&d).unwrap().mul(&change[i].1).unwrap());
        }
        let c = FiniteComplex::new(dims, diffs).unwrap();
        prop_assert_eq!(c.homology_dims(), h.clone());
        prop_assert_eq!(c.euler_characteristic(), h.iter().enumerate().map(|(i, &x)| if i % 2 == 0 { x as i64 } else { -(x as i64) }).sum::<i64>());
    }

    fn nbc_dims_do_not_depend_on_order(a in arrangement(3, 7), perm in Just((0..7).collect::<Vec<usize>>()).prop_shuffle()) {
        let m = a.matroid();
        let order: Vec<usize> = perm.into_iter().filter(|&i| i < m.ground_size()).collect();
        prop_assert_eq!(OsAlgebra::with_order(&m, &order).dims(), OsAlgebra::new(&m).dims());
    }

    fn os_products(a in arrangement(3, 6), cx in prop::collection::vec(-2i64..=2, 6), cy in prop::collection::vec(-2i64..=2, 15), cz in prop::collection::vec(-2i64..=2, 6), dy in 1usize..=2) {
        let os = OsAlgebra::new(&a.matroid());
        let x = element(&os, 1, &cx);
        let y = element(&os, dy, &cy);
        let z = element(&os, 1, &cz);
        let xy = os.multiply(&x, &y);
        let yx = os.multiply(&y, &x);
        // graded commutativity
        let expect = if dy % 2 == 1 { negate(&yx) } else { yx };
        prop_assert_eq!(&xy.coords, &expect.coords);
        prop_assert_eq!(os.multiply(&xy, &z).coords, os.multiply(&x, &os.multiply(&y, &z)).coords);
    }

    fn linear_strand_is_a_complex(a in arrangement(3, 6), t in 1usize..=3) {
        let os = OsAlgebra::new(&a.matroid());
        let r = enveloping_of_holonomy(&os, t + 1, FieldArith::new()).unwrap();
        prop_assert!(linear_strand_complex(&os, &r, t).is_ok());
    }

    fn flag_boundary_and_contraction(a in arrangement(3, 6), inf in any::<prop::sample::Index>()) {
        let b = a.matroid();
        let lat = FlagLattice::new(&b, inf.index(b.ground_size()));
        for p in 1..=2 {
            let lower = lat.nbc(p - 1);
            for fl in lat.all_flags(p) {
                for i in bits::iter(fl.top()) {
                    let (sign, terms) = lat.flag_minus(&fl, i);
                    for &s in &lower {
                        let lhs: i64 = sign * terms.iter().map(|g| f_pairing(g, &bits::to_vec(s))).sum::<i64>();
                        let mut cols = vec![i];
                        cols.extend(bits::iter(s));
                        prop_assert_eq!(lhs, f_pairing(&fl, &cols));
                    }
                }
            }
        }
        prop_assert!(boundary_squared_vanishes(&lat, 2).unwrap());
    }

    fn chordal_graphic_arrangements_are_koszul((v, edges) in chordal_graph(6)) {
        let m = graphic(v, &edges).matroid();
        let os = OsAlgebra::new(&m);
        let r = enveloping_of_holonomy(&os, 4, FieldArith::<Rational>::new()).unwrap();
        prop_assert!(koszul_numerics_check(&os.dims(), r.dims(), 4));
        let chain = find_solvable_chain(&m).unwrap();
        prop_assert_eq!(singular_range(&chain, &os.dims()).unwrap(), SingularOutcome::Supersolvable);
    }

    fn generic_slices_have_a_singular_range((v, edges) in chordal_graph(7), ell in 3usize..=4) {
        let m = graphic(v, &edges).matroid();
        prop_assume!(m.rank() > ell && m.ground_size() <= 12);
        let t = truncate(&m, ell);
        let chain = find_solvable_chain(&t);
        prop_assert!(chain.is_some());
        let chain = chain.unwrap();
        match singular_range(&chain, &OsAlgebra::new(&t).dims()).unwrap() {
            SingularOutcome::Range(r) => prop_assert!(3 <= r.c && r.c <= r.d, "{:?}", r),
            SingularOutcome::Supersolvable => prop_assert!(false, "a proper truncation is not supersolvable"),
        }
    }

    fn pbw_round_trip(e in prop::collection::btree_map(1usize..10, 1u64..20, 0..5)) {
        let e: BTreeMap<usize, BigInt> = e.into_iter().map(|(k, v)| (k, BigInt::from(v))).collect();
        let s = pbw_expand(&e, 10);
        prop_assert_eq!(pbw_lie_ranks(&s).unwrap(), e);
    }
}
