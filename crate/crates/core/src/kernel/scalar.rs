//! Scalar fields used by the linear-algebra kernel.
//!
//! Everything that only needs field operations is written against [`Field`],
//! which is a thin layer over `num-traits`. Two implementations ship:
//! arbitrary-precision rationals and prime fields with a compile-time modulus.
//! The large rank computations use [`ModArith`] instead, which carries a
//! runtime prime.

use std::fmt::{self, Debug, Display};
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

/// Arbitrary-precision rational number; the default scalar field.
pub type Rational = BigRational;

/// A commutative field with exact arithmetic.
pub trait Field:
    Clone
    + Debug
    + PartialEq
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Send
    + Sync
    + 'static
{
    const CHARACTERISTIC: u64;

    fn from_i64(v: i64) -> Self;

    /// Image of a rational number, or `None` when its denominator is not
    /// invertible in this field.
    fn from_rational(r: &Rational) -> Option<Self>;

    fn inv(&self) -> Self {
        Self::one() / self.clone()
    }
}

impl Field for Rational {
    const CHARACTERISTIC: u64 = 0;

    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }

    fn from_rational(r: &Rational) -> Option<Self> {
        Some(r.clone())
    }
}

/// Integer `v` as a rational.
pub fn rat(v: i64) -> Rational {
    Rational::from_i64(v)
}

/// `num / den` as a rational. Panics on a zero denominator.
pub fn ratio(num: i64, den: i64) -> Rational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Element of the prime field with `P` elements. `P` must be prime.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Zp<const P: u64>(u64);

impl<const P: u64> Zp<P> {
    pub fn new(v: i64) -> Self {
        Zp(v.rem_euclid(P as i64) as u64)
    }

    pub fn value(self) -> u64 {
        self.0
    }
}

impl<const P: u64> Debug for Zp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.0, P)
    }
}

impl<const P: u64> Display for Zp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u64> Add for Zp<P> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Zp(add_mod(self.0, o.0, P))
    }
}

impl<const P: u64> Sub for Zp<P> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Zp(sub_mod(self.0, o.0, P))
    }
}

impl<const P: u64> Mul for Zp<P> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Zp(mul_mod(self.0, o.0, P))
    }
}

impl<const P: u64> Div for Zp<P> {
    type Output = Self;
    fn div(self, o: Self) -> Self {
        assert!(o.0 != 0, "division by zero in Z/{P}");
        self * Zp(inv_mod(o.0, P))
    }
}

impl<const P: u64> Neg for Zp<P> {
    type Output = Self;
    fn neg(self) -> Self {
        Zp(sub_mod(0, self.0, P))
    }
}

impl<const P: u64> Zero for Zp<P> {
    fn zero() -> Self {
        Zp(0)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
}

impl<const P: u64> One for Zp<P> {
    fn one() -> Self {
        Zp(1 % P)
    }
}

impl<const P: u64> Field for Zp<P> {
    const CHARACTERISTIC: u64 = P;

    fn from_i64(v: i64) -> Self {
        Zp::new(v)
    }

    fn from_rational(r: &Rational) -> Option<Self> {
        reduce_rational(r, P).map(Zp)
    }
}

#[inline]
pub(crate) fn add_mod(a: u64, b: u64, p: u64) -> u64 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

#[inline]
pub(crate) fn sub_mod(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

#[inline]
pub(crate) fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    let e = (a as i128).extended_gcd(&(p as i128));
    debug_assert_eq!(e.gcd, 1, "{a} not invertible mod {p}");
    e.x.rem_euclid(p as i128) as u64
}

/// Reduce a rational modulo `p`, or `None` if `p` divides the denominator.
pub fn reduce_rational(r: &Rational, p: u64) -> Option<u64> {
    let pb = BigInt::from(p);
    let den = r.denom().mod_floor(&pb).to_u64()?;
    if den == 0 {
        return None;
    }
    let num = r.numer().mod_floor(&pb).to_u64()?;
    Some(mul_mod(num, inv_mod(den, p), p))
}

/// Exact arithmetic interface used by the elimination routines. Unlike
/// [`Field`] it carries a context, so the modulus of a prime field can be
/// chosen at run time.
pub trait Arith: Sync {
    type E: Clone + Send + Sync + Debug;
    fn zero(&self) -> Self::E;
    fn one(&self) -> Self::E;
    fn is_zero(&self, a: &Self::E) -> bool;
    fn neg(&self, a: &Self::E) -> Self::E;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E;
    /// `acc -= c * v`
    fn sub_mul(&self, acc: &mut Self::E, c: &Self::E, v: &Self::E);
    fn inv(&self, a: &Self::E) -> Self::E;
    fn from_rational(&self, r: &Rational) -> Option<Self::E>;
    /// Zero for characteristic-zero fields.
    fn characteristic(&self) -> u64;
}

/// Context-free arithmetic of a [`Field`].
#[derive(Debug, Clone, Copy, Default)]
pub struct FieldArith<F>(std::marker::PhantomData<F>);

impl<F: Field> FieldArith<F> {
    pub fn new() -> Self {
        FieldArith(std::marker::PhantomData)
    }
}

impl<F: Field> Arith for FieldArith<F> {
    type E = F;
    fn zero(&self) -> F {
        F::zero()
    }
    fn one(&self) -> F {
        F::one()
    }
    fn is_zero(&self, a: &F) -> bool {
        a.is_zero()
    }
    fn neg(&self, a: &F) -> F {
        -a.clone()
    }
    fn mul(&self, a: &F, b: &F) -> F {
        a.clone() * b.clone()
    }
    fn sub_mul(&self, acc: &mut F, c: &F, v: &F) {
        let t = std::mem::replace(acc, F::zero());
        *acc = t - c.clone() * v.clone();
    }
    fn inv(&self, a: &F) -> F {
        a.inv()
    }
    fn from_rational(&self, r: &Rational) -> Option<F> {
        F::from_rational(r)
    }
    fn characteristic(&self) -> u64 {
        F::CHARACTERISTIC
    }
}

/// Arithmetic modulo a run-time prime below 2^63.
#[derive(Debug, Clone, Copy)]
pub struct ModArith {
    pub p: u64,
}

impl Arith for ModArith {
    type E = u64;
    #[inline]
    fn zero(&self) -> u64 {
        0
    }
    #[inline]
    fn one(&self) -> u64 {
        1
    }
    #[inline]
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    #[inline]
    fn neg(&self, a: &u64) -> u64 {
        sub_mod(0, *a, self.p)
    }
    #[inline]
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        mul_mod(*a, *b, self.p)
    }
    #[inline]
    fn sub_mul(&self, acc: &mut u64, c: &u64, v: &u64) {
        *acc = sub_mod(*acc, mul_mod(*c, *v, self.p), self.p);
    }
    fn inv(&self, a: &u64) -> u64 {
        inv_mod(*a, self.p)
    }
    fn from_rational(&self, r: &Rational) -> Option<u64> {
        reduce_rational(r, self.p)
    }
    fn characteristic(&self) -> u64 {
        self.p
    }
}

/// Render a rational as `a` or `a/b`.
pub fn fmt_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Exact conversion of an integral rational to `i64`.
pub fn rational_to_i64(r: &Rational) -> Option<i64> {
    if r.is_integer() {
        r.numer().to_i64()
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type F7 = Zp<7>;

    #[test]
    fn prime_field_inverse() {
        for v in 1..7 {
            let a = F7::new(v);
            assert_eq!(a * a.inv(), F7::one());
        }
        assert_eq!(F7::new(-1).value(), 6);
    }

    #[test]
    fn rational_reduction() {
        assert_eq!(reduce_rational(&ratio(1, 2), 7), Some(4));
        assert_eq!(reduce_rational(&ratio(-3, 1), 7), Some(4));
        assert_eq!(reduce_rational(&ratio(1, 14), 7), None);
        assert_eq!(F7::from_rational(&ratio(3, 5)), Some(F7::new(3) / F7::new(5)));
    }

    #[test]
    fn mod_arith_matches_const_field() {
        let m = ModArith { p: 101 };
        let mut acc = 5u64;
        m.sub_mul(&mut acc, &7, &9);
        assert_eq!(acc, (5i64 - 63).rem_euclid(101) as u64);
        assert_eq!(m.mul(&m.inv(&37), &37), 1);
    }
}
