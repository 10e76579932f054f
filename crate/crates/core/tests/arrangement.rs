use hlie::arrangement::*;
use hlie::bits;
use hlie::io::{lookup, parse_text};
use hlie::kernel::scalar::rat;

#[test]
fn construction() {
    let b = Arrangement::new(3, vec![vec![rat(1), rat(0), rat(0)], vec![rat(0), rat(1), rat(0)], vec![rat(0), rat(0), rat(1)]]).unwrap();
    assert_eq!(b, Arrangement::boolean(3).unwrap());
    let a = lookup("ex_2gen7_a").unwrap();
    let a = a.arrangement().unwrap();
    assert_eq!((a.len(), a.ambient_dim(), a.rank()), (7, 4, 4));
    let dup = Arrangement::new(2, vec![vec![rat(1), rat(2)], vec![rat(2), rat(4)]]);
    assert_eq!(dup, Err(ArrangementError::DuplicateHyperplane { first: 0, second: 1 }));
    assert!(matches!(parse_text("arr 2 2\n1 1\n1 1\n"), Err(hlie::io::ParseError::Invalid(_))));
}

#[test]
fn lattice_of_two_generic_seven() {
    let m = lookup("ex_2gen7_a").unwrap().matroid();
    let lat = m.flats(3);
    let big: Vec<_> = lat.flats(3).iter().filter(|&&f| bits::len(f) == 4).collect();
    assert_eq!(big.len(), 5);
    assert!(lat.flats(2).iter().all(|&f| bits::len(f) == 2));
    assert!(m.two_generic());
    let boolean = Matroid::boolean(3).flats(2);
    assert_eq!(boolean.flats(2).len(), 3);
    assert!(boolean.flats(2).iter().all(|&f| bits::len(f) == 2));
}

#[test]
fn concurrent_lines_are_not_two_generic() {
    let a = Arrangement::new(2, vec![vec![rat(1), rat(0)], vec![rat(0), rat(1)], vec![rat(1), rat(-1)]]).unwrap();
    assert!(!a.matroid().two_generic());
}

#[test]
fn cone_and_decone() {
    let empty = AffineArrangement { dim: 1, rows: vec![] };
    assert_eq!(Arrangement::cone(&empty).unwrap().len(), 1);
    let b = lookup("ex_pres_B").unwrap();
    let b = b.arrangement().unwrap();
    assert_eq!(b.len(), 9);
    let aff = b.decone(8).unwrap();
    assert_eq!(aff.rows.len(), 8);
    assert_eq!(&Arrangement::cone(&aff).unwrap(), b);
}

#[test]
fn block_designs() {
    let d: Vec<Matroid> = ["nandi_d1", "nandi_d2", "nandi_d3"].iter().map(|k| lookup(k).unwrap().matroid()).collect();
    for m in &d {
        assert_eq!((m.ground_size(), m.rank()), (10, 4));
        assert_eq!(m.circuits().iter().filter(|&&c| bits::len(c) == 4).count(), 15);
        assert!(m.two_generic());
    }
    assert_ne!(d[1].circuits(), d[2].circuits());
    let free = Matroid::from_block_design(&[], 4).unwrap();
    assert_eq!(free.rank(), 4);
    assert!(free.circuits().is_empty());
    assert!(matches!(Matroid::from_block_design(&[0b111], 5), Err(ArrangementError::BadBlock { .. })));
}

#[test]
fn invalid_circuits() {
    // {1,2,3} and {1,2,4} force a circuit inside {1,3,4} ... elimination fails
    assert!(Matroid::from_circuits(4, vec![0b0111, 0b1011], None).is_err());
    assert!(Matroid::from_circuits(3, vec![0b011], None).is_err());
}
