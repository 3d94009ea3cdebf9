//! Integral-dependence polynomials built as characteristic polynomials.
//!
//! For monic `f` of degree `D`, the quotient `Z[X_1..X_m]/(f(X_1),..,f(X_m))`
//! is free over `Z` on the monomials with all exponents below `D`.
//! Multiplication by `X_1*...*X_m` acts on it as the `m`-fold Kronecker power
//! of the companion matrix of `f`, so its characteristic polynomial `h` is monic
//! of degree `D^m` and, by Cayley-Hamilton, `h(X_1*...*X_m)` lies in the ideal.
//!
//! The characteristic polynomial is recovered from the traces of powers:
//! `tr(C^j)` is the `j`-th power sum of the roots of `f` and the trace of a
//! Kronecker power is the power of the trace.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::exactpoly::{gcd_bezout, ModPoly, Poly};
use crate::scalar::IntegerScalar;
use crate::{Error, IntPoly, Result};

/// Power sums `p_1..p_count` of the roots of a monic polynomial
/// (Newton's identities). `out[0]` is `p_1`.
pub fn power_sums<T: IntegerScalar>(f: &Poly<T>, count: usize) -> Result<Vec<T>> {
    let d = match f.degree() {
        Some(d) if f.is_monic() => d,
        _ => return Err(Error::NotMonic),
    };
    // f = X^d + c_1 X^{d-1} + ... + c_d
    let c = |i: usize| -> T { f.coeff(d - i) };
    let mut p: Vec<T> = Vec::with_capacity(count);
    for j in 1..=count {
        let mut acc = T::zero();
        for i in 1..j.min(d + 1) {
            acc = acc + c(i) * p[j - i - 1].clone();
        }
        if j <= d {
            acc = acc + T::from_i64(j as i64) * c(j);
        }
        p.push(-acc);
    }
    Ok(p)
}

/// The monic polynomial of degree `n` whose roots have power sums
/// `sums[0..n]` (inverse Newton identities; divisions are exact).
pub fn from_power_sums<T: IntegerScalar>(sums: &[T], n: usize) -> Poly<T> {
    assert!(sums.len() >= n);
    // h = X^n + b_1 X^{n-1} + ... + b_n
    let mut b: Vec<T> = Vec::with_capacity(n + 1);
    b.push(T::one());
    for j in 1..=n {
        let mut acc = sums[j - 1].clone();
        for i in 1..j {
            acc = acc + b[i].clone() * sums[j - i - 1].clone();
        }
        let jj = T::from_i64(j as i64);
        debug_assert!(acc.is_multiple_of(&jj), "Newton identity division must be exact");
        b.push(-(acc / jj));
    }
    b.reverse();
    Poly::new(b)
}

/// Monic `h` with `h(X_1*...*X_m)` in `(f(X_1), ..., f(X_m))`, degree exactly `D^m`.
pub fn product_annihilator<T: IntegerScalar>(f: &Poly<T>, m: usize) -> Result<Poly<T>> {
    let d = match f.degree() {
        Some(d) if d >= 1 && f.is_monic() => d,
        _ => return Err(Error::NotMonic),
    };
    if m == 0 {
        return Err(Error::Precondition("product_annihilator needs m >= 1".into()));
    }
    let n = d
        .checked_pow(m as u32)
        .ok_or_else(|| Error::Precondition("annihilator degree overflows".into()))?;
    let base = power_sums(f, n)?;
    let sums: Vec<T> = base
        .into_iter()
        .map(|s| (1..m).fold(s.clone(), |acc, _| acc * s.clone()))
        .collect();
    Ok(from_power_sums(&sums, n))
}

/// Characteristic polynomial of multiplication by `X^k` on `Z[X]/(h)`:
/// monic, same degree as `h`, and it vanishes at `g^k` whenever `h` vanishes at `g`.
pub fn power_annihilator<T: IntegerScalar>(h: &Poly<T>, k: usize) -> Result<Poly<T>> {
    let n = match h.degree() {
        Some(n) if h.is_monic() => n,
        _ => return Err(Error::NotMonic),
    };
    if k == 0 {
        return Err(Error::Precondition("power_annihilator needs k >= 1".into()));
    }
    let all = power_sums(h, n * k)?;
    let sums: Vec<T> = (1..=n).map(|j| all[j * k - 1].clone()).collect();
    Ok(from_power_sums(&sums, n))
}

/// Output of [`engel_exponent`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EngelExponent {
    pub r: u32,
    /// cofactor of `(X-1)^c`
    pub u: ModPoly,
    /// cofactor of `h`
    pub v: ModPoly,
}

/// Largest `r` with `(X-1)^r = gcd((X-1)^c, h)` in `F_p[X]`, with the Bezout cofactors.
pub fn engel_exponent(h: &IntPoly, c: u32, p: u64) -> Result<EngelExponent> {
    if c == 0 {
        return Err(Error::Precondition("engel_exponent needs c >= 1".into()));
    }
    let a = ModPoly::x_minus_one_pow(p, c);
    let hb = ModPoly::from_int(p, h);
    let (g, u, v) = gcd_bezout(&a, &hb)?;
    let r = g.degree().expect("gcd is nonzero") as u32;
    debug_assert_eq!(g, ModPoly::x_minus_one_pow(p, r));
    Ok(EngelExponent { r, u, v })
}

/// Exponent of the largest power of `p` dividing `q`.
pub fn p_part(q: &BigInt, p: u64) -> Result<u32> {
    if q.is_zero() || q < &BigInt::zero() {
        return Err(Error::Precondition("p_part needs q >= 1".into()));
    }
    let pb = BigInt::from(p);
    let mut q = q.clone();
    let mut s = 0;
    loop {
        let (quot, rem) = q.div_rem(&pb);
        if !rem.is_zero() || q.is_one() {
            return Ok(s);
        }
        q = quot;
        s += 1;
    }
}
