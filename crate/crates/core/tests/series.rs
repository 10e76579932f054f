use std::collections::BTreeMap;

use hlie::series::*;
use num_bigint::BigInt;

fn ints(s: &Series) -> Vec<i64> {
    to_integers(s).unwrap()
}

fn big(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| x.into()).collect()
}

#[test]
fn rational_expansion() {
    let r = RationalFunctionRep::new(vec![5, 2], RationalFunctionRep::one_minus_power(1, 3).iter().map(|c| c.try_into().unwrap()).collect());
    assert_eq!(ints(&r.expand(3).unwrap()), vec![5, 17, 36, 62]);
    let geo = RationalFunctionRep::new(vec![1], vec![1, -1]);
    assert_eq!(ints(&geo.expand(6).unwrap()), vec![1; 7]);
    let d6: Vec<i64> = RationalFunctionRep::one_minus_power(1, 6).iter().map(|c| c.try_into().unwrap()).collect();
    let r = RationalFunctionRep::new(vec![1, 6, -1, -1], d6);
    assert_eq!(ints(&r.expand(3).unwrap()), vec![1, 12, 56, 175]);
    let bad = RationalFunctionRep::new(vec![1], vec![0, 1]);
    assert_eq!(bad.expand(2).unwrap_err(), SeriesError::ZeroConstantTerm);
    assert_eq!(r.to_string(), "(1 + 6*t - t^2 - t^3)/(1 - 6*t + 15*t^2 - 20*t^3 + 15*t^4 - 6*t^5 + t^6)");
}

#[test]
fn rescaling() {
    let mut one = BigradedTable::new(10);
    one.add(0, 0, 1.into());
    assert_eq!(rescale_collapse(&one, 1, 6).unwrap().coeffs(), big(&[1, 0, 0, 0, 0, 0, 0]).as_slice());
    // a single generator in bidegree (1,0) lands in degree 2q
    let mut t = BigradedTable::new(3);
    t.add(0, 0, 1.into());
    t.add(1, 0, 3.into());
    t.add(0, 1, 2.into());
    let s = rescale_collapse(&t, 2, 5).unwrap();
    assert_eq!(s.coeffs(), big(&[1, 0, 0, 0, 3, 2]).as_slice());
    assert!(matches!(rescale_collapse(&t, 1, 8), Err(SeriesError::Truncated { p_max: 3, .. })));
}

#[test]
fn pbw() {
    let s = IntSeries::new(big(&[1, 1]), 6);
    assert_eq!(pbw_lie_ranks(&s).unwrap(), BTreeMap::from([(1, BigInt::from(1))]));
    let s = IntSeries::new(big(&[1, 0, 1, 0, 1, 0, 1]), 6);
    assert_eq!(pbw_lie_ranks(&s).unwrap(), BTreeMap::from([(2, BigInt::from(1))]));
    let e = BTreeMap::from([(2, BigInt::from(7))]);
    assert_eq!(pbw_expand(&e, 9).coeffs(), big(&[1, 0, 7, 0, 28, 0, 84, 0, 210, 0]).as_slice());
    let e = BTreeMap::from([(2, BigInt::from(7)), (7, 5.into()), (9, 17.into())]);
    let s = pbw_expand(&e, 10);
    assert_eq!(s.coeff(9), BigInt::from(52));
    assert_eq!(pbw_lie_ranks(&s).unwrap(), e);
    assert_eq!(pbw_expand(&BTreeMap::new(), 4).coeffs(), big(&[1, 0, 0, 0, 0]).as_slice());
    assert!(matches!(pbw_lie_ranks(&IntSeries::new(big(&[1, 1, -1]), 2)), Err(SeriesError::NotPbw(_))));
}

#[test]
fn enveloping_table() {
    // h(U) = h(R) / (1 - sum M) with M concentrated in one bidegree
    let r = big(&[1, 2, 3, 4, 5]);
    let m = BTreeMap::from([((0, 3), BigInt::from(1))]);
    let u = enveloping_series(&r, &m, 4);
    assert_eq!(u.get(2, 1), 1.into());
    assert_eq!(u.get(3, 1), 2.into());
    assert_eq!(u.get(4, 2), 1.into());
    assert_eq!(u.get(4, 0), 5.into());
}
