use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::lawkit::{PositiveLaw, Word};
use crate::{Error, IntPoly, Result};

/// Laurent polynomial in `X`, exponent to coefficient.
type Laurent = BTreeMap<i64, BigInt>;

fn add_shifted(acc: &mut Laurent, m: &Laurent, shift: i64, sign: i64) {
    for (e, c) in m {
        let slot = acc.entry(e + shift).or_insert_with(BigInt::zero);
        *slot += c * sign;
        if slot.is_zero() {
            acc.remove(&(e + shift));
        }
    }
}

/// Value of a positive word in `A ⋊ <t>` when variable `j` is `t^a = (t, 1 - X)`
/// and every other variable is `(t, 0)`; returns the module part.
///
/// Products follow `(t^e, m)(t^f, n) = (t^{e+f}, m X^f + n)`.
fn module_part(w: &Word, j: usize) -> Laurent {
    let special: Laurent = [(0, BigInt::one()), (1, -BigInt::one())].into_iter().collect();
    let mut m = Laurent::new();
    for &(v, _) in w.letters() {
        let mut next = Laurent::new();
        add_shifted(&mut next, &m, 1, 1);
        if v == j {
            add_shifted(&mut next, &special, 0, 1);
        }
        m = next;
    }
    m
}

fn to_poly(m: &Laurent) -> Option<IntPoly> {
    let lo = *m.keys().next()?;
    let hi = *m.keys().next_back()?;
    let mut coeffs = vec![BigInt::zero(); (hi - lo + 1) as usize];
    for (e, c) in m {
        coeffs[(e - lo) as usize] = c.clone();
    }
    Some(IntPoly::new(coeffs))
}

/// Annihilator candidates from a positive law.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivedAnnihilator {
    /// Kills `A` under `t` for `t` in a normal subset satisfying the law.
    pub f_plus: IntPoly,
    /// Kills `A` under `t^-1`.
    pub f_minus: IntPoly,
    /// `f_plus * f_minus`
    pub f: IntPoly,
    /// Variable whose substitution produced `f_plus`.
    pub variable: usize,
}

/// Monic `f` of degree at most `2n` such that `f(t)` annihilates every abelian
/// normal section for `t` in a normal subset satisfying the law, and for `t^-1`.
///
/// Substituting `t^a` for one variable and `t` for the rest, the law forces
/// `(P_alpha - P_beta)(t)` to kill `A`; the difference is `(1 - X)` times a
/// polynomial with coefficients in `{-1, 0, 1}`. The shortest such difference
/// over all variables gives `f_plus`; `f_minus` is its reciprocal.
pub fn derive_annihilator_f(law: &PositiveLaw) -> Result<DerivedAnnihilator> {
    let mut best: Option<(usize, IntPoly)> = None;
    for j in 0..law.arity() {
        let mut diff = module_part(law.alpha(), j);
        add_shifted(&mut diff, &module_part(law.beta(), j), 0, -1);
        let Some(p) = to_poly(&diff) else { continue };
        let monic = p
            .monic_by_sign()
            .ok_or_else(|| Error::Internal("law difference has a non-unit leading coefficient".into()))?;
        let better = match &best {
            None => true,
            Some((_, b)) => monic.degree() < b.degree(),
        };
        if better {
            best = Some((j, monic));
        }
    }
    let (variable, f_plus) =
        best.ok_or_else(|| Error::DegenerateLaw("law carries no abelian content".into()))?;
    let f_minus = f_plus
        .reciprocal()
        .monic_by_sign()
        .ok_or_else(|| Error::Internal("reciprocal has a non-unit leading coefficient".into()))?;
    let f = &f_plus * &f_minus;
    Ok(DerivedAnnihilator { f_plus, f_minus, f, variable })
}

/// `v = alpha(w(x_1..x_l), ..., w(x_{(k-1)l+1}..x_{kl})) beta(...)^-1`.
pub fn compose_law(w: &Word, law: &PositiveLaw) -> Result<Word> {
    let l = w.arity();
    let k = law.arity();
    let arity = k * l;
    let blocks: Vec<Word> = (0..k)
        .map(|b| {
            let images: Vec<Word> = (0..l).map(|i| Word::var(b * l + i, arity)).collect();
            w.substitute(&images).map(|x| x.with_arity(arity))
        })
        .collect::<Result<_>>()?;
    let a = law.alpha().substitute(&blocks)?;
    let b = law.beta().substitute(&blocks)?;
    Ok(a.mul(&b.inverse()).with_arity(arity))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(cs: &[i64]) -> IntPoly {
        IntPoly::from_i64s(cs)
    }

    #[test]
    fn commutativity_gives_fourth_power() {
        let d = derive_annihilator_f(&PositiveLaw::parse("x1 x2 = x2 x1").unwrap()).unwrap();
        assert_eq!(d.f_plus, p(&[1, -2, 1]));
        assert_eq!(d.f, p(&[1, -2, 1]).pow(2));
    }

    #[test]
    fn class_two_law() {
        let d = derive_annihilator_f(&PositiveLaw::parse("x1 x2 x2 x1 = x2 x1 x1 x2").unwrap()).unwrap();
        let xm1 = p(&[-1, 1]);
        let xp1 = p(&[1, 1]);
        assert_eq!(d.f, &xm1.pow(6) * &xp1.pow(2));
        assert!(d.f.degree().unwrap() <= 8);
    }

    #[test]
    fn compose_with_identity_word() {
        let v = compose_law(&Word::parse("x1").unwrap(), &PositiveLaw::parse("x1 x2 = x2 x1").unwrap()).unwrap();
        assert_eq!(v, Word::parse("x1 x2 x1^-1 x2^-1").unwrap());
        // a commutator law
        assert_eq!(v, Word::parse("[x1^-1,x2^-1]").unwrap());
    }

    #[test]
    fn compose_cube() {
        let v = compose_law(&Word::parse("x1^3").unwrap(), &PositiveLaw::parse("x1 x2 = x2 x1").unwrap()).unwrap();
        assert_eq!(v.arity(), 2);
        assert_eq!(v, Word::parse("x1^3 x2^3 x1^-3 x2^-3").unwrap());
    }
}
