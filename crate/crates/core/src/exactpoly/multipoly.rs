use std::collections::BTreeMap;

use crate::exactpoly::Poly;
use crate::scalar::Scalar;
use crate::{Error, Result};

/// Sparse polynomial in `nvars` commuting variables `X_1..X_m`.
///
/// Terms are keyed by exponent vectors; zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiPoly<T> {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, T>,
}

impl<T: Scalar> MultiPoly<T> {
    pub fn zero(nvars: usize) -> Self {
        Self { nvars, terms: BTreeMap::new() }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &T)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, exps: Vec<u32>, c: T) {
        assert_eq!(exps.len(), self.nvars, "exponent vector length");
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&exps) {
            Some(old) => {
                let sum = old.clone() + c;
                if sum.is_zero() {
                    self.terms.remove(&exps);
                } else {
                    *old = sum;
                }
            }
            None => {
                self.terms.insert(exps, c);
            }
        }
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Vec<u32>, T)>) -> Self {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    /// `h(X_1 * X_2 * ... * X_m)`.
    pub fn from_univariate_of_product(h: &Poly<T>, nvars: usize) -> Self {
        Self::from_terms(
            nvars,
            h.coeffs()
                .iter()
                .enumerate()
                .map(|(d, c)| (vec![d as u32; nvars], c.clone())),
        )
    }

    /// `p(X_var)`.
    pub fn from_univariate_in(p: &Poly<T>, var: usize, nvars: usize) -> Self {
        Self::from_terms(
            nvars,
            p.coeffs().iter().enumerate().map(|(d, c)| {
                let mut e = vec![0; nvars];
                e[var] = d as u32;
                (e, c.clone())
            }),
        )
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars);
        let mut out = Self::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1.clone() * c2.clone());
            }
        }
        out
    }

    pub fn max_exponent(&self) -> u32 {
        self.terms.keys().flat_map(|e| e.iter().copied()).max().unwrap_or(0)
    }

    /// Normal form modulo the ideal `(f(X_1), ..., f(X_m))` for a monic `f`.
    ///
    /// Each generator is monic in its own variable, so rewriting
    /// `X_i^D -> X_i^D - f(X_i)` is confluent and the result, with every
    /// exponent below `D = deg f`, is zero exactly when `self` lies in the ideal.
    pub fn reduce_mod_powers(&self, f: &Poly<T>) -> Result<Self> {
        let d = match f.degree() {
            Some(d) if d >= 1 && f.is_monic() => d,
            _ => return Err(Error::NotMonic),
        };
        // rems[e] = X^e mod f, as a dense vector of length d
        let max_e = self.max_exponent() as usize;
        let mut rems: Vec<Vec<T>> = Vec::with_capacity(max_e + 1);
        let mut cur = vec![T::zero(); d];
        cur[0] = T::one();
        for _ in 0..=max_e {
            rems.push(cur.clone());
            // multiply by X and reduce the overflow with f
            let top = cur[d - 1].clone();
            for i in (1..d).rev() {
                cur[i] = cur[i - 1].clone();
            }
            cur[0] = T::zero();
            if !top.is_zero() {
                for (i, c) in cur.iter_mut().enumerate() {
                    *c = c.clone() - top.clone() * f.coeff(i);
                }
            }
        }

        let mut out = Self::zero(self.nvars);
        for (exps, coeff) in &self.terms {
            // expand the tensor product of the per-variable remainders
            let mut partial: Vec<(Vec<u32>, T)> = vec![(Vec::with_capacity(self.nvars), coeff.clone())];
            for &e in exps {
                let rem = &rems[e as usize];
                let mut next = Vec::with_capacity(partial.len() * d);
                for (pe, pc) in &partial {
                    for (i, rc) in rem.iter().enumerate() {
                        if rc.is_zero() {
                            continue;
                        }
                        let mut ne = pe.clone();
                        ne.push(i as u32);
                        next.push((ne, pc.clone() * rc.clone()));
                    }
                }
                partial = next;
            }
            for (e, c) in partial {
                out.add_term(e, c);
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type M = MultiPoly<i64>;

    fn f(cs: &[i64]) -> Poly<i64> {
        Poly::new(cs.to_vec())
    }

    #[test]
    fn single_rewrite() {
        let p = M::from_terms(2, [(vec![2, 0], 1)]);
        let r = p.reduce_mod_powers(&f(&[-1, 0, 1])).unwrap();
        assert_eq!(r, M::from_terms(2, [(vec![0, 0], 1)]));
    }

    #[test]
    fn annihilated_by_square() {
        let p = M::from_terms(2, [(vec![3, 1], 1)]);
        assert!(p.reduce_mod_powers(&f(&[0, 0, 1])).unwrap().is_zero());
    }

    #[test]
    fn idempotent_projection() {
        let p = M::from_terms(2, [(vec![1, 1], 1), (vec![2, 0], 1)]);
        let r = p.reduce_mod_powers(&f(&[0, -1, 1])).unwrap();
        assert_eq!(r, M::from_terms(2, [(vec![1, 1], 1), (vec![1, 0], 1)]));
        assert_eq!(r.reduce_mod_powers(&f(&[0, -1, 1])).unwrap(), r);
    }

    #[test]
    fn rejects_non_monic() {
        let p = M::from_terms(1, [(vec![3], 1)]);
        assert!(p.reduce_mod_powers(&f(&[1, 2])).is_err());
        assert!(p.reduce_mod_powers(&f(&[1])).is_err());
    }
}
