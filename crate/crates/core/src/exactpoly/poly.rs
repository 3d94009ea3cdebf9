use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::scalar::Scalar;
use crate::{Error, Result};

/// Dense univariate polynomial, `coeffs[i]` is the coefficient of `X^i`.
///
/// The coefficient vector never carries trailing zeros, so the zero
/// polynomial is the empty vector and `degree()` is `len - 1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly<T> {
    coeffs: Vec<T>,
}

impl<T: Scalar> Poly<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(T::one())
    }

    pub fn constant(c: T) -> Self {
        Self::new(vec![c])
    }

    /// `c * X^deg`
    pub fn monomial(c: T, deg: usize) -> Self {
        let mut v = vec![T::zero(); deg + 1];
        v[deg] = c;
        Self::new(v)
    }

    pub fn x() -> Self {
        Self::monomial(T::one(), 1)
    }

    /// `X - c`
    pub fn linear_root(c: T) -> Self {
        Self::new(vec![-c, T::one()])
    }

    pub fn from_i64s(cs: &[i64]) -> Self
    where
        T: From<i64>,
    {
        Self::new(cs.iter().map(|&c| T::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<T> {
        self.coeffs
    }

    /// Coefficient of `X^i`, zero past the degree.
    pub fn coeff(&self, i: usize) -> T {
        self.coeffs.get(i).cloned().unwrap_or_else(T::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&T> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| c.is_one())
    }

    pub fn scale(&self, c: &T) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    /// Multiply by `X^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut v = vec![T::zero(); k];
        v.extend(self.coeffs.iter().cloned());
        Self { coeffs: v }
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &T) -> T {
        self.coeffs
            .iter()
            .rev()
            .fold(T::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    /// `p(X^i)`.
    pub fn substitute_power(&self, i: usize) -> Self {
        assert!(i >= 1, "substitute_power needs i >= 1");
        if self.is_zero() {
            return Self::zero();
        }
        let mut v = vec![T::zero(); (self.coeffs.len() - 1) * i + 1];
        for (d, c) in self.coeffs.iter().enumerate() {
            v[d * i] = c.clone();
        }
        Self::new(v)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Division by a monic divisor; exact over any ring.
    pub fn div_rem_monic(&self, d: &Self) -> Result<(Self, Self)> {
        let dd = match d.degree() {
            Some(n) if d.is_monic() => n,
            _ => return Err(Error::NotMonic),
        };
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Self::zero(), self.clone()));
        }
        let mut quot = vec![T::zero(); rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let c = rem[i].clone();
            if c.is_zero() {
                continue;
            }
            quot[i - dd] = c.clone();
            for (j, dc) in d.coeffs.iter().enumerate() {
                rem[i - dd + j] = rem[i - dd + j].clone() - c.clone() * dc.clone();
            }
        }
        rem.truncate(dd);
        Ok((Self::new(quot), Self::new(rem)))
    }

    /// Remainder modulo a monic polynomial.
    pub fn rem_monic(&self, d: &Self) -> Result<Self> {
        Ok(self.div_rem_monic(d)?.1)
    }

    /// Reciprocal polynomial `X^deg * p(1/X)`.
    pub fn reciprocal(&self) -> Self {
        let mut v = self.coeffs.clone();
        v.reverse();
        Self::new(v)
    }

    /// Drop the largest power of `X` dividing `self`.
    pub fn strip_x_powers(&self) -> (usize, Self) {
        let k = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        (k, Self::new(self.coeffs[k.min(self.coeffs.len())..].to_vec()))
    }

    /// Multiply by a unit so the leading coefficient is 1; fails unless it is `±1`.
    pub fn monic_by_sign(&self) -> Option<Self> {
        let lead = self.leading()?;
        if lead.is_one() {
            Some(self.clone())
        } else if (-lead.clone()).is_one() {
            Some(-self)
        } else {
            None
        }
    }
}

impl<T: Scalar> Add for &Poly<T> {
    type Output = Poly<T>;
    fn add(self, rhs: &Poly<T>) -> Poly<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl<T: Scalar> Sub for &Poly<T> {
    type Output = Poly<T>;
    fn sub(self, rhs: &Poly<T>) -> Poly<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl<T: Scalar> Mul for &Poly<T> {
    type Output = Poly<T>;
    fn mul(self, rhs: &Poly<T>) -> Poly<T> {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut v = vec![T::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                v[i + j] = v[i + j].clone() + a.clone() * b.clone();
            }
        }
        Poly::new(v)
    }
}

impl<T: Scalar> Neg for &Poly<T> {
    type Output = Poly<T>;
    fn neg(self) -> Poly<T> {
        Poly::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }
}

impl<T: Scalar> Add for Poly<T> {
    type Output = Poly<T>;
    fn add(self, rhs: Poly<T>) -> Poly<T> {
        &self + &rhs
    }
}

impl<T: Scalar> Sub for Poly<T> {
    type Output = Poly<T>;
    fn sub(self, rhs: Poly<T>) -> Poly<T> {
        &self - &rhs
    }
}

impl<T: Scalar> Mul for Poly<T> {
    type Output = Poly<T>;
    fn mul(self, rhs: Poly<T>) -> Poly<T> {
        &self * &rhs
    }
}

impl<T: Scalar + fmt::Display> fmt::Display for Poly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 if c.is_one() => write!(f, "X")?,
                1 => write!(f, "{c}*X")?,
                _ if c.is_one() => write!(f, "X^{i}")?,
                _ => write!(f, "{c}*X^{i}")?,
            }
        }
        Ok(())
    }
}

impl<T: Scalar + fmt::Display> fmt::Debug for Poly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type P = Poly<i64>;

    #[test]
    fn trims_trailing_zeros() {
        let p = P::new(vec![1, 2, 0, 0]);
        assert_eq!(p.degree(), Some(1));
        assert!(P::new(vec![0, 0]).is_zero());
        assert_eq!(P::zero().degree(), None);
    }

    #[test]
    fn monic_division() {
        // X^3 - 1 = (X - 1)(X^2 + X + 1)
        let a = P::new(vec![-1, 0, 0, 1]);
        let (q, r) = a.div_rem_monic(&P::linear_root(1)).unwrap();
        assert_eq!(q, P::new(vec![1, 1, 1]));
        assert!(r.is_zero());
        assert!(a.div_rem_monic(&P::new(vec![1, 2])).is_err());
    }

    #[test]
    fn substitute_and_pow() {
        let h = P::new(vec![-2, 1]);
        assert_eq!(h.substitute_power(3), P::new(vec![-2, 0, 0, 1]));
        assert_eq!(P::linear_root(1).pow(2), P::new(vec![1, -2, 1]));
        assert_eq!(h.eval(&2), 0);
    }

    #[test]
    fn reciprocal_and_strip() {
        let p = P::new(vec![0, 0, 1, -1]);
        let (k, q) = p.strip_x_powers();
        assert_eq!(k, 2);
        assert_eq!(q, P::new(vec![1, -1]));
        assert_eq!(q.reciprocal(), P::new(vec![-1, 1]));
        assert_eq!(q.monic_by_sign(), Some(P::new(vec![1, -1]).scale(&-1)));
        assert_eq!(P::new(vec![1, 2]).monic_by_sign(), None);
    }
}
