//! Polynomials, truncated power series, bigraded Hilbert series, rescaling
//! and PBW inversion.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_bigint::BigInt;
use num_traits::{Num, One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::kernel::scalar::Rational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SeriesError {
    #[error("constant term of the denominator is zero")]
    ZeroConstantTerm,
    #[error("constant term {0} is not invertible over the coefficient ring")]
    NotInvertible(String),
    #[error("not a PBW series: {0}")]
    NotPbw(String),
    #[error("table truncated too early: bidegrees {missing:?} are needed but only p <= {p_max} is known")]
    Truncated { missing: Vec<(usize, usize)>, p_max: usize },
}

/// Polynomial with integer coefficients, lowest degree first.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Polynomial(pub Vec<i64>);

impl Polynomial {
    pub fn from_counts(c: &[usize]) -> Self {
        Polynomial(c.iter().map(|&x| x as i64).collect()).trimmed()
    }

    fn trimmed(mut self) -> Self {
        while self.0.last() == Some(&0) {
            self.0.pop();
        }
        self
    }

    pub fn coeff(&self, k: usize) -> i64 {
        self.0.get(k).copied().unwrap_or(0)
    }

    pub fn degree(&self) -> Option<usize> {
        (!self.0.is_empty()).then(|| self.0.len() - 1)
    }

    /// `prod_j (1 + d_j t)`
    pub fn from_exponents(d: &[usize]) -> Self {
        d.iter().fold(Polynomial(vec![1]), |p, &dj| p.mul(&Polynomial(vec![1, dj as i64])))
    }

    pub fn mul(&self, o: &Polynomial) -> Polynomial {
        if self.0.is_empty() || o.0.is_empty() {
            return Polynomial(Vec::new());
        }
        let mut c = vec![0i64; self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in o.0.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        Polynomial(c).trimmed()
    }

    /// Exact quotient by `1 + t`, or `None` when `-1` is not a root.
    pub fn div_one_plus_t(&self) -> Option<Polynomial> {
        let Some(d) = self.degree() else { return Some(self.clone()) };
        let mut q = vec![0i64; d];
        let mut carry = 0i64;
        for k in 0..d {
            q[k] = self.0[k] - carry;
            carry = q[k];
        }
        (self.0[d] == carry).then(|| Polynomial(q).trimmed())
    }
}

/// `c_0 + c_1*t + ...` with zero terms dropped.
fn write_poly<T: Signed + One + fmt::Display>(f: &mut fmt::Formatter<'_>, coeffs: &[T]) -> fmt::Result {
    let mut first = true;
    for (k, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let a = c.abs();
        let coef = if a.is_one() && k > 0 { String::new() } else { format!("{a}*") };
        let term = match k {
            0 => format!("{a}"),
            1 => format!("{coef}t"),
            _ => format!("{coef}t^{k}"),
        };
        if first {
            write!(f, "{}{term}", if c.is_negative() { "-" } else { "" })?;
        } else {
            write!(f, " {} {term}", if c.is_negative() { "-" } else { "+" })?;
        }
        first = false;
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_poly(f, &self.0)
    }
}

/// Power series `c_0 + c_1 t + ... + c_N t^N + O(t^{N+1})`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedSeries<T> {
    coeffs: Vec<T>,
}

pub type Series = TruncatedSeries<Rational>;
pub type IntSeries = TruncatedSeries<BigInt>;

impl<T: Num + Clone> TruncatedSeries<T> {
    /// Coefficients beyond `order` are dropped, missing ones are zero.
    pub fn new(mut coeffs: Vec<T>, order: usize) -> Self {
        coeffs.resize(order + 1, T::zero());
        TruncatedSeries { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Self::new(Vec::new(), order)
    }

    pub fn one(order: usize) -> Self {
        Self::new(vec![T::one()], order)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> T {
        self.coeffs.get(k).cloned().unwrap_or_else(T::zero)
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn set(&mut self, k: usize, v: T) {
        if k < self.coeffs.len() {
            self.coeffs[k] = v;
        }
    }

    pub fn scale(&self, c: &T) -> Self {
        TruncatedSeries { coeffs: self.coeffs.iter().map(|x| x.clone() * c.clone()).collect() }
    }

    /// Multiplicative inverse. The constant term must divide every
    /// coefficient that arises, which always holds over a field and over the
    /// integers when it is `1` or `-1`.
    pub fn inverse(&self) -> Result<Self, SeriesError> {
        let c0 = self.coeff(0);
        if c0.is_zero() {
            return Err(SeriesError::ZeroConstantTerm);
        }
        let n = self.order();
        let mut inv: Vec<T> = Vec::with_capacity(n + 1);
        let exact = |a: T| -> Option<T> {
            let q = a.clone() / c0.clone();
            (q.clone() * c0.clone() == a).then_some(q)
        };
        inv.push(exact(T::one()).ok_or_else(|| SeriesError::NotInvertible(String::from("c0")))?);
        for k in 1..=n {
            let mut s = T::zero();
            for j in 1..=k {
                s = s + self.coeffs[j].clone() * inv[k - j].clone();
            }
            let v = exact(T::zero() - s).ok_or_else(|| SeriesError::NotInvertible(String::from("c0")))?;
            inv.push(v);
        }
        Ok(TruncatedSeries { coeffs: inv })
    }

    pub fn pow(&self, e: usize) -> Self {
        (0..e).fold(Self::one(self.order()), |acc, _| &acc * self)
    }
}

impl<T: Num + Clone> Add for &TruncatedSeries<T> {
    type Output = TruncatedSeries<T>;
    fn add(self, o: Self) -> TruncatedSeries<T> {
        let n = self.order().min(o.order());
        TruncatedSeries { coeffs: (0..=n).map(|k| self.coeffs[k].clone() + o.coeffs[k].clone()).collect() }
    }
}

impl<T: Num + Clone> Sub for &TruncatedSeries<T> {
    type Output = TruncatedSeries<T>;
    fn sub(self, o: Self) -> TruncatedSeries<T> {
        let n = self.order().min(o.order());
        TruncatedSeries { coeffs: (0..=n).map(|k| self.coeffs[k].clone() - o.coeffs[k].clone()).collect() }
    }
}

impl<T: Num + Clone> Mul for &TruncatedSeries<T> {
    type Output = TruncatedSeries<T>;
    fn mul(self, o: Self) -> TruncatedSeries<T> {
        let n = self.order().min(o.order());
        let mut c = vec![T::zero(); n + 1];
        for i in 0..=n {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..=n - i {
                c[i + j] = c[i + j].clone() + self.coeffs[i].clone() * o.coeffs[j].clone();
            }
        }
        TruncatedSeries { coeffs: c }
    }
}

/// Quotient of two integer polynomials, lowest degree first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalFunctionRep {
    pub numerator: Vec<BigInt>,
    pub denominator: Vec<BigInt>,
}

impl RationalFunctionRep {
    pub fn new(numerator: Vec<i64>, denominator: Vec<i64>) -> Self {
        RationalFunctionRep {
            numerator: numerator.into_iter().map(BigInt::from).collect(),
            denominator: denominator.into_iter().map(BigInt::from).collect(),
        }
    }

    /// `(1 - d t)^k` as a coefficient list.
    pub fn one_minus_power(d: i64, k: usize) -> Vec<BigInt> {
        let mut p = vec![BigInt::one()];
        for _ in 0..k {
            let mut q = vec![BigInt::zero(); p.len() + 1];
            for (i, a) in p.iter().enumerate() {
                q[i] += a;
                q[i + 1] -= a * d;
            }
            p = q;
        }
        p
    }

    pub fn expand(&self, order: usize) -> Result<Series, SeriesError> {
        expand_rational(self, order)
    }
}

impl fmt::Display for RationalFunctionRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        write_poly(f, &self.numerator)?;
        write!(f, ")/(")?;
        write_poly(f, &self.denominator)?;
        write!(f, ")")
    }
}

/// Power series expansion of a rational function.
pub fn expand_rational(r: &RationalFunctionRep, order: usize) -> Result<Series, SeriesError> {
    let to_q = |v: &[BigInt]| v.iter().map(|x| Rational::from_integer(x.clone())).collect::<Vec<_>>();
    let den = Series::new(to_q(&r.denominator), order);
    if den.coeff(0).is_zero() {
        return Err(SeriesError::ZeroConstantTerm);
    }
    let num = Series::new(to_q(&r.numerator), order);
    Ok(&num * &den.inverse()?)
}

/// Finite table of dimensions indexed by a bidegree `(p, q)`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BigradedTable {
    /// Entries are complete for every `p <= p_max`.
    pub p_max: usize,
    pub entries: BTreeMap<(usize, usize), BigInt>,
}

impl BigradedTable {
    pub fn new(p_max: usize) -> Self {
        BigradedTable { p_max, entries: BTreeMap::new() }
    }

    pub fn get(&self, p: usize, q: usize) -> BigInt {
        self.entries.get(&(p, q)).cloned().unwrap_or_default()
    }

    pub fn add(&mut self, p: usize, q: usize, v: BigInt) {
        if v.is_zero() || p > self.p_max {
            return;
        }
        let slot = self.entries.entry((p, q)).or_default();
        *slot += v;
        if slot.is_zero() {
            self.entries.remove(&(p, q));
        }
    }

    pub fn support_q(&self) -> Vec<usize> {
        let mut q: Vec<usize> = self.entries.keys().map(|k| k.1).collect();
        q.sort_unstable();
        q.dedup();
        q
    }

    /// Product truncated at `p_max`.
    pub fn mul(&self, o: &BigradedTable) -> BigradedTable {
        let mut out = BigradedTable::new(self.p_max.min(o.p_max));
        for ((p1, q1), a) in &self.entries {
            for ((p2, q2), b) in &o.entries {
                out.add(p1 + p2, q1 + q2, a * b);
            }
        }
        out
    }
}

/// Bigraded Hilbert series `h(R,t) / (1 - sum M^p_q t^{p+2} u^{q-2})` up to
/// `p_max`. `r_dims[p] = dim R_p` and `m[(p, q)] = dim M^p_q`, `q >= 3`.
pub fn enveloping_series(r_dims: &[BigInt], m: &BTreeMap<(usize, usize), BigInt>, p_max: usize) -> BigradedTable {
    let mut r = BigradedTable::new(p_max);
    for (p, d) in r_dims.iter().enumerate().take(p_max + 1) {
        r.add(p, 0, d.clone());
    }
    let mut x = BigradedTable::new(p_max);
    for ((p, q), v) in m {
        assert!(*q >= 3, "M is concentrated in internal degrees at least 3");
        x.add(p + 2, q - 2, v.clone());
    }
    // geometric series in x; every power raises p by at least 2
    let mut total = r.clone();
    let mut term = r;
    loop {
        term = term.mul(&x);
        if term.entries.is_empty() {
            break;
        }
        for ((p, q), v) in &term.entries {
            total.add(*p, *q, v.clone());
        }
    }
    total
}

/// Collapse a bigraded table under `t -> t u^{2q}, u -> u^{2q+1}, t = 1`:
/// bidegree `(a, b)` lands in degree `2qa + (2q+1)b`.
pub fn rescale_collapse(u: &BigradedTable, q: usize, degree_bound: usize) -> Result<IntSeries, SeriesError> {
    assert!(q >= 1, "rescaling parameter must be positive");
    let (wa, wb) = (2 * q, 2 * q + 1);
    let missing: Vec<(usize, usize)> = (u.p_max + 1..=degree_bound / wa)
        .flat_map(|a| (0..=(degree_bound - wa * a) / wb).map(move |b| (a, b)))
        .collect();
    if !missing.is_empty() {
        return Err(SeriesError::Truncated { missing, p_max: u.p_max });
    }
    let mut c = vec![BigInt::zero(); degree_bound + 1];
    for ((a, b), v) in &u.entries {
        let s = wa * a + wb * b;
        if s <= degree_bound {
            c[s] += v;
        }
    }
    Ok(IntSeries::new(c, degree_bound))
}

/// Ranks `e_i` of a graded Lie algebra, keyed by degree.
pub type LieRankVector = BTreeMap<usize, BigInt>;

fn binomial(n: &BigInt, k: usize) -> BigInt {
    let mut r = BigInt::one();
    for i in 0..k {
        r = r * (n - BigInt::from(i)) / BigInt::from(i + 1);
    }
    r
}

/// Strip (`strip = true`) or restore the PBW factor of `e` generators in
/// degree `i`: `(1 + u^i)^e` for odd `i`, `(1 - u^i)^{-e}` for even `i`.
fn apply_factor(s: &IntSeries, i: usize, e: &BigInt, strip: bool) -> IntSeries {
    let n = s.order();
    let mut f = vec![BigInt::zero(); n + 1];
    for k in 0..=n / i {
        // (1 + x)^{-e} has coefficients (-1)^k C(e+k-1, k)
        let c = match (i % 2 == 1, strip) {
            (true, true) => binomial(&(e + BigInt::from(k) - 1), k) * if k % 2 == 0 { 1 } else { -1 },
            (true, false) => binomial(e, k),
            (false, true) => binomial(e, k) * if k % 2 == 0 { 1 } else { -1 },
            (false, false) => binomial(&(e + BigInt::from(k) - 1), k),
        };
        f[k * i] = c;
    }
    s * &IntSeries::new(f, n)
}

/// Recover `e_i` from `prod_{i odd} (1+u^i)^{e_i} prod_{i even} (1-u^i)^{-e_i}`.
pub fn pbw_lie_ranks(series: &IntSeries) -> Result<LieRankVector, SeriesError> {
    if !series.coeff(0).is_one() {
        return Err(SeriesError::NotPbw(format!("constant term {} is not 1", series.coeff(0))));
    }
    let mut cur = series.clone();
    let mut out = LieRankVector::new();
    for i in 1..=series.order() {
        let e = cur.coeff(i);
        if e.is_negative() {
            return Err(SeriesError::NotPbw(format!("degree {i} would need rank {e}")));
        }
        if e.is_zero() {
            continue;
        }
        cur = apply_factor(&cur, i, &e, true);
        out.insert(i, e);
    }
    Ok(out)
}

/// Inverse of [`pbw_lie_ranks`].
pub fn pbw_expand(e: &LieRankVector, order: usize) -> IntSeries {
    e.iter()
        .filter(|(i, v)| **i >= 1 && !v.is_zero())
        .fold(IntSeries::one(order), |acc, (i, v)| apply_factor(&acc, *i, v, false))
}

/// Rational series coefficients as integers, when they all are.
pub fn to_integers(s: &Series) -> Option<Vec<i64>> {
    s.coeffs().iter().map(|c| if c.is_integer() { c.numer().to_i64() } else { None }).collect()
}
