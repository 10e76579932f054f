use hlie::bits;
use hlie::flags::*;
use hlie::io::lookup;

fn pres_b() -> FlagLattice {
    let b = lookup("ex_pres_B").unwrap().matroid();
    let inf = b.ground_size() - 1;
    FlagLattice::new(&b, inf)
}

#[test]
fn pres_flag_bases() {
    let lat = pres_b();
    assert_eq!(lat.betti(), vec![1, 8, 24, 32, 16]);
    for (p, d) in [(1, 8), (2, 24), (3, 32), (4, 16)] {
        assert_eq!(flag_basis(&lat, p).unwrap().dim(), d);
    }
}

/// `f(F - i)` is the contraction of `f(F)` by `e_i`.
#[test]
fn minus_is_contraction() {
    let lat = pres_b();
    for p in 1..=4 {
        let lower = lat.nbc(p - 1);
        for fl in lat.all_flags(p) {
            for i in bits::iter(fl.top()) {
                let (sign, terms) = lat.flag_minus(&fl, i);
                for &s in &lower {
                    let lhs: i64 = sign * terms.iter().map(|g| f_pairing(g, &bits::to_vec(s))).sum::<i64>();
                    let mut cols = vec![i];
                    cols.extend(bits::iter(s));
                    assert_eq!(lhs, f_pairing(&fl, &cols), "p={p} i={i} flag={fl:?}");
                }
            }
        }
    }
}

#[test]
fn boundary_squares_to_zero() {
    let lat = pres_b();
    for p in 2..=4 {
        assert!(boundary_squared_vanishes(&lat, p).unwrap(), "p={p}");
    }
}

#[test]
fn pres_counts() {
    let a = lookup("ex_pres_A").unwrap().matroid();
    let b = lookup("ex_pres_B").unwrap().matroid();
    let inf = b.ground_size() - 1;
    let g = g_presentation(&a, Some((&b, inf)), 3).unwrap();
    assert_eq!(g.generators_of_bidegree((1, 0)), 9);
    assert_eq!(g.generators_of_bidegree((2, 1)), 32);
    assert_eq!(g.count(RelationKind::Flag), 16);
    assert_eq!(g.count(RelationKind::Central), 32);
    assert_eq!(g.count(RelationKind::Holonomy), 60);
    print!("{g}");
}

#[test]
fn boolean_flags() {
    let b = hlie::arrangement::Matroid::boolean(4);
    let lat = FlagLattice::new(&b, 3);
    assert_eq!(lat.betti(), vec![1, 3, 3, 1]);
    // one nbc flag per subset of the three affine coordinate hyperplanes
    for p in 0..=3 {
        assert_eq!(flag_basis(&lat, p).unwrap().dim(), [1, 3, 3, 1][p]);
    }
    // (H1 < H1 H2) has boundary (H2) x1 - (H1) x2
    let one = flag_basis(&lat, 1).unwrap();
    let fl = Flag(vec![0b01, 0b11]);
    let bd = flag_boundary(&lat, &one, &fl).unwrap();
    let h = |s: u64| one.basis.iter().position(|f| f.0 == vec![s]).unwrap() as u32;
    let r = |v: i64| hlie::kernel::scalar::rat(v);
    assert_eq!(bd, vec![(0, vec![(h(0b10), r(1))]), (1, vec![(h(0b01), r(-1))])]);
    assert!(boundary_squared_vanishes(&lat, 2).unwrap() && boundary_squared_vanishes(&lat, 3).unwrap());
    assert!(flag_boundary(&lat, &one, &Flag(vec![0b01, 0b01])).is_err());
}

#[test]
fn generic_slice_of_boolean() {
    // four generic planes through the origin of C^3
    let a = hlie::arrangement::Matroid::from_circuits(4, vec![0b1111], Some(3)).unwrap();
    let g = g_presentation(&a, None, 3).unwrap();
    assert_eq!(g.generators_of_bidegree((1, 0)), 4);
    assert_eq!(g.generators_of_bidegree((2, 1)), 1);
    assert_eq!(g.count(RelationKind::Flag), 0);
    assert_eq!(g.count(RelationKind::Central), 1);
    // six rank-2 flats of size two
    assert_eq!(g.count(RelationKind::Holonomy), 12);
}

#[test]
fn refusals() {
    let b = lookup("ex_pres_B").unwrap().matroid();
    assert!(matches!(g_presentation(&b, None, 3), Err(FlagError::NotGenericSlice { .. })));
    let a = lookup("ex_2gen7_a").unwrap().matroid();
    assert!(matches!(g_presentation(&a, None, 3), Err(FlagError::NotGenericSlice { .. })));
    let a = lookup("ex_pres_A").unwrap().matroid();
    assert!(matches!(g_presentation(&a, None, 3), Err(FlagError::DeformationRequired)));
}
