use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::{Error, IntPoly, Result};

/// Polynomial over the prime field `F_p`, coefficients low degree first,
/// each reduced into `[0, p)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ModPoly {
    modulus: u64,
    coeffs: Vec<u64>,
}

fn inv_mod(a: u64, p: u64) -> u64 {
    // p is prime and a != 0 mod p
    let (g, x, _) = crate::scalar::ext_gcd(&(a as i128), &(p as i128));
    debug_assert_eq!(g, 1);
    x.rem_euclid(p as i128) as u64
}

impl ModPoly {
    pub fn new(modulus: u64, coeffs: Vec<u64>) -> Self {
        let mut coeffs: Vec<u64> = coeffs.into_iter().map(|c| c % modulus).collect();
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Self { modulus, coeffs }
    }

    pub fn from_i64s(modulus: u64, cs: &[i64]) -> Self {
        let p = modulus as i64;
        Self::new(modulus, cs.iter().map(|c| c.rem_euclid(p) as u64).collect())
    }

    /// Image of an integer polynomial under reduction mod p.
    pub fn from_int(modulus: u64, poly: &IntPoly) -> Self {
        let m = BigInt::from(modulus);
        let cs = poly
            .coeffs()
            .iter()
            .map(|c| c.mod_floor(&m).to_u64().expect("reduced coefficient fits"))
            .collect();
        Self::new(modulus, cs)
    }

    pub fn zero(modulus: u64) -> Self {
        Self { modulus, coeffs: Vec::new() }
    }

    pub fn one(modulus: u64) -> Self {
        Self::new(modulus, vec![1])
    }

    /// `(X - 1)^e`
    pub fn x_minus_one_pow(modulus: u64, e: u32) -> Self {
        Self::new(modulus, vec![modulus - 1, 1]).pow(e)
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    fn coeff(&self, i: usize) -> u64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    fn check(&self, other: &Self) {
        assert_eq!(self.modulus, other.modulus, "mixed moduli");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check(other);
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new(self.modulus, (0..n).map(|i| (self.coeff(i) + other.coeff(i)) % self.modulus).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.check(other);
        let p = self.modulus;
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new(p, (0..n).map(|i| (self.coeff(i) + p - other.coeff(i)) % p).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check(other);
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.modulus);
        }
        let p = self.modulus as u128;
        let mut v = vec![0u128; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                v[i + j] = (v[i + j] + a as u128 * b as u128) % p;
            }
        }
        Self::new(self.modulus, v.into_iter().map(|c| c as u64).collect())
    }

    pub fn scale(&self, c: u64) -> Self {
        let p = self.modulus as u128;
        Self::new(
            self.modulus,
            self.coeffs.iter().map(|&a| ((a as u128 * c as u128) % p) as u64).collect(),
        )
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.modulus);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Scale to leading coefficient 1; zero stays zero.
    pub fn monic(&self) -> Self {
        match self.coeffs.last() {
            None => self.clone(),
            Some(&lead) => self.scale(inv_mod(lead, self.modulus)),
        }
    }

    pub fn div_rem(&self, d: &Self) -> Result<(Self, Self)> {
        self.check(d);
        let p = self.modulus;
        let dd = d.degree().ok_or(Error::DivisionByZero)?;
        let inv = inv_mod(d.coeffs[dd], p);
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Self::zero(p), self.clone()));
        }
        let mut quot = vec![0u64; rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let c = (rem[i] as u128 * inv as u128 % p as u128) as u64;
            if c == 0 {
                continue;
            }
            quot[i - dd] = c;
            for (j, &dc) in d.coeffs.iter().enumerate() {
                let sub = (c as u128 * dc as u128 % p as u128) as u64;
                rem[i - dd + j] = (rem[i - dd + j] + p - sub) % p;
            }
        }
        rem.truncate(dd);
        Ok((Self::new(p, quot), Self::new(p, rem)))
    }

    /// Multiplicity of the root 1, i.e. the largest `r` with `(X-1)^r | self`.
    pub fn multiplicity_of_one(&self) -> Option<u32> {
        if self.is_zero() {
            return None;
        }
        let lin = Self::new(self.modulus, vec![self.modulus - 1, 1]);
        let mut cur = self.clone();
        let mut r = 0;
        loop {
            let (q, rem) = cur.div_rem(&lin).expect("nonzero divisor");
            if !rem.is_zero() {
                return Some(r);
            }
            cur = q;
            r += 1;
        }
    }
}

/// Extended Euclid in `F_p[X]`: returns `(g, u, v)` with `g` monic,
/// `g = gcd(a, b)` and `u*a + v*b = g`.
pub fn gcd_bezout(a: &ModPoly, b: &ModPoly) -> Result<(ModPoly, ModPoly, ModPoly)> {
    a.check(b);
    let p = a.modulus;
    if a.is_zero() && b.is_zero() {
        return Err(Error::BothZero);
    }
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (ModPoly::one(p), ModPoly::zero(p));
    let (mut t0, mut t1) = (ModPoly::zero(p), ModPoly::one(p));
    while !r1.is_zero() {
        let (q, r) = r0.div_rem(&r1)?;
        r0 = std::mem::replace(&mut r1, r);
        let s = s0.sub(&q.mul(&s1));
        s0 = std::mem::replace(&mut s1, s);
        let t = t0.sub(&q.mul(&t1));
        t0 = std::mem::replace(&mut t1, t);
    }
    let lead = *r0.coeffs.last().expect("gcd nonzero");
    let inv = inv_mod(lead, p);
    Ok((r0.scale(inv), s0.scale(inv), t0.scale(inv)))
}

impl fmt::Display for ModPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0 (mod {})", self.modulus);
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| match (i, c) {
                (0, c) => format!("{c}"),
                (1, 1) => "X".to_string(),
                (1, c) => format!("{c}*X"),
                (i, 1) => format!("X^{i}"),
                (i, c) => format!("{c}*X^{i}"),
            })
            .collect();
        write!(f, "{} (mod {})", terms.join(" + "), self.modulus)
    }
}

impl fmt::Debug for ModPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ModPoly({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xm1(p: u64, e: u32) -> ModPoly {
        ModPoly::x_minus_one_pow(p, e)
    }

    #[test]
    fn bezout_nested_powers() {
        let (g, u, v) = gcd_bezout(&xm1(3, 3), &xm1(3, 2)).unwrap();
        assert_eq!(g, xm1(3, 2));
        assert!(u.is_zero());
        assert_eq!(v, ModPoly::one(3));
    }

    #[test]
    fn bezout_common_linear_factor() {
        let a = ModPoly::from_i64s(3, &[-1, 0, 1]);
        let b = xm1(3, 2);
        let (g, u, v) = gcd_bezout(&a, &b).unwrap();
        assert_eq!(g, xm1(3, 1));
        assert_eq!(u.mul(&a).add(&v.mul(&b)), g);
    }

    #[test]
    fn bezout_coprime_over_f2() {
        let a = ModPoly::from_i64s(2, &[0, 1]);
        let b = ModPoly::from_i64s(2, &[1, 1]);
        let (g, u, v) = gcd_bezout(&a, &b).unwrap();
        assert_eq!(g, ModPoly::one(2));
        assert_eq!(u.mul(&a).add(&v.mul(&b)), g);
    }

    #[test]
    fn bezout_rejects_double_zero() {
        assert!(gcd_bezout(&ModPoly::zero(5), &ModPoly::zero(5)).is_err());
    }

    #[test]
    fn root_one_multiplicity() {
        let h = xm1(3, 2).mul(&ModPoly::from_i64s(3, &[1, 1]));
        assert_eq!(h.multiplicity_of_one(), Some(2));
        assert_eq!(ModPoly::from_i64s(5, &[2, 1]).multiplicity_of_one(), Some(0));
    }
}
