//! Bounded search for `q X^l (X^k - 1)^l` in the ideal `J = (h(X^i) : i >= 1)`.
//!
//! The ideal is truncated to `i <= i_max` with cofactors of degree at most
//! `deg_max`; inside that truncation membership of `q * target` is a question
//! about an integer lattice, answered exactly (including the least `q`) by an
//! echelon basis carrying generator combinations.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::exactpoly::EchelonLattice;
use crate::{Error, IntPoly, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SempleBounds {
    pub i_max: usize,
    pub deg_max: usize,
    pub param_max: usize,
}

impl Default for SempleBounds {
    fn default() -> Self {
        Self { i_max: 8, deg_max: 32, param_max: 8 }
    }
}

/// Explicit proof that `target = sum_j cofactors[j] * h(X^{generators[j]})`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MembershipCertificate {
    pub h: IntPoly,
    pub generators: Vec<usize>,
    pub cofactors: Vec<IntPoly>,
    pub target: IntPoly,
}

impl MembershipCertificate {
    /// Exact re-expansion of the cofactor sum.
    pub fn expand(&self) -> IntPoly {
        self.generators
            .iter()
            .zip(&self.cofactors)
            .fold(IntPoly::zero(), |acc, (&i, c)| &acc + &(c * &self.h.substitute_power(i)))
    }

    pub fn verify(&self) -> bool {
        self.generators.len() == self.cofactors.len()
            && self.generators.iter().all(|&i| i >= 1)
            && self.expand() == self.target
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SempleWitness {
    pub q: BigInt,
    pub k: usize,
    pub ell: usize,
    pub certificate: MembershipCertificate,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SempleOutcome {
    Found(SempleWitness),
    /// No `(l, k) <= param_max` works inside the truncated ideal.
    Exhausted(SempleBounds),
}

/// `X^l (X^k - 1)^l`
pub fn semple_target(k: usize, ell: usize) -> IntPoly {
    let xk1 = &IntPoly::monomial(BigInt::one(), k) - &IntPoly::one();
    xk1.pow(ell as u32).shift(ell)
}

/// Lexicographically least `(l, k, q)` with `l, k <= param_max` and
/// `q X^l (X^k - 1)^l` in the truncated ideal.
pub fn semple_search(h: &IntPoly, bounds: SempleBounds) -> Result<SempleOutcome> {
    let dh = match h.degree() {
        Some(d) if h.is_monic() => d,
        _ => return Err(Error::NotMonic),
    };
    let SempleBounds { i_max, deg_max, param_max } = bounds;
    if i_max == 0 || param_max == 0 {
        return Err(Error::Precondition("semple bounds must be positive".into()));
    }
    let dim = deg_max + i_max * dh + 1;
    let per_i = deg_max + 1;
    let mut lattice = EchelonLattice::<BigInt>::new(dim, i_max * per_i);
    for i in 1..=i_max {
        let hi = h.substitute_power(i);
        for j in 0..=deg_max {
            let mut v = vec![BigInt::zero(); dim];
            for (d, c) in hi.coeffs().iter().enumerate() {
                v[d + j] = c.clone();
            }
            lattice.insert((i - 1) * per_i + j, v);
        }
    }

    for ell in 1..=param_max {
        for k in 1..=param_max {
            let target = semple_target(k, ell);
            if target.coeffs().len() > dim {
                continue;
            }
            let mut tv = target.coeffs().to_vec();
            tv.resize(dim, BigInt::zero());
            let Some(w) = lattice.min_multiple(&tv) else { continue };
            debug_assert!(w.q.is_positive());
            let mut generators = Vec::new();
            let mut cofactors = Vec::new();
            for i in 1..=i_max {
                let c = IntPoly::new(w.combo[(i - 1) * per_i..i * per_i].to_vec());
                if !c.is_zero() {
                    generators.push(i);
                    cofactors.push(c);
                }
            }
            let certificate = MembershipCertificate {
                h: h.clone(),
                generators,
                cofactors,
                target: target.scale(&w.q),
            };
            if !certificate.verify() {
                return Err(Error::Internal("membership certificate failed to re-expand".into()));
            }
            return Ok(SempleOutcome::Found(SempleWitness { q: w.q, k, ell, certificate }));
        }
    }
    Ok(SempleOutcome::Exhausted(bounds))
}
