//! Scalar traits the exact algebra is generic over.
//!
//! Everything in this crate is exact: the polynomial and lattice code is
//! written against [`Scalar`] (a commutative ring with exact operations) and
//! [`IntegerScalar`] (a Euclidean integer type). Machine integers are fine for
//! small, bounded computations; `BigInt` is used wherever coefficients can grow.

use std::fmt::Debug;
use std::ops::Neg;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Num, Signed, ToPrimitive};

/// A commutative ring element with exact arithmetic.
pub trait Scalar: Clone + Debug + PartialEq + Num + Neg<Output = Self> + Send + Sync + 'static {}

impl<T> Scalar for T where T: Clone + Debug + PartialEq + Num + Neg<Output = T> + Send + Sync + 'static
{}

/// An integer type with gcd and sign.
pub trait IntegerScalar: Scalar + Integer + Signed + ToPrimitive {
    fn from_i64(v: i64) -> Self;
}

impl IntegerScalar for i64 {
    fn from_i64(v: i64) -> Self {
        v
    }
}

impl IntegerScalar for i128 {
    fn from_i64(v: i64) -> Self {
        v as i128
    }
}

impl IntegerScalar for BigInt {
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
}

/// Extended gcd: returns `(g, x, y)` with `g = x*a + y*b` and `g >= 0`.
pub fn ext_gcd<T: IntegerScalar>(a: &T, b: &T) -> (T, T, T) {
    let (mut old_r, mut r) = (a.clone(), b.clone());
    let (mut old_s, mut s) = (T::one(), T::zero());
    let (mut old_t, mut t) = (T::zero(), T::one());
    while !r.is_zero() {
        let q = old_r.div_floor(&r);
        let nr = old_r - q.clone() * r.clone();
        old_r = std::mem::replace(&mut r, nr);
        let ns = old_s - q.clone() * s.clone();
        old_s = std::mem::replace(&mut s, ns);
        let nt = old_t - q * t.clone();
        old_t = std::mem::replace(&mut t, nt);
    }
    if old_r.is_negative() {
        (-old_r, -old_s, -old_t)
    } else {
        (old_r, old_s, old_t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ext_gcd_small() {
        let (g, x, y) = ext_gcd(&240i64, &46i64);
        assert_eq!(g, 2);
        assert_eq!(x * 240 + y * 46, 2);
        let (g, x, y) = ext_gcd(&-6i64, &9i64);
        assert_eq!(g, 3);
        assert_eq!(x * -6 + y * 9, 3);
        let (g, _, y) = ext_gcd(&0i64, &-5i64);
        assert_eq!((g, y), (5, -1));
    }
}
