use std::sync::Arc;

use num_traits::ToPrimitive;

use crate::exactpoly::smith_diagonalize;
use crate::pcgroup::{Element, PcGroup, Quotient, Subgroup};
use crate::sections::SectionEndomorphism;
use crate::{Error, IntPoly, Result};

/// `A = K/L` for normal `L <= K` with `K/L` abelian, written additively as
/// `Z/d_1 x ... x Z/d_r` (all `d_j > 1`) with `G` acting by conjugation:
/// `a . g = a^g`.
#[derive(Clone, Debug)]
pub struct AbelianSection {
    k: Subgroup,
    l: Subgroup,
    quotient: Arc<Quotient>,
    /// `K/L` inside `G/L`.
    kbar: Subgroup,
    moduli: Vec<u64>,
    /// kbar-basis exponents to section coordinates (columns restricted to `moduli`)
    v: Vec<Vec<i128>>,
    /// Lifts to `G` of the section basis.
    witnesses: Vec<Element>,
}

/// `[A, _r g]` failure: the basis element whose image leaves the target.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SectionWitness {
    pub g: Element,
    pub a: Element,
}

/// Failure of the stratified Engel chain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StratifiedFailure {
    /// 1, 2 or 3.
    pub step: u8,
    /// Power level `i` for step 1.
    pub level: u32,
    pub witness: SectionWitness,
}

impl AbelianSection {
    pub fn new(g: &PcGroup, k: &Subgroup, l: &Subgroup) -> Result<Self> {
        if !g.is_normal(l) || !g.is_normal(k) {
            return Err(Error::Precondition("section subgroups must be normal".into()));
        }
        let q = Arc::new(Quotient::new(g, l)?);
        Self::in_quotient(g, k, q)
    }

    /// Section `K/L` with `G/L` already built.
    pub fn in_quotient(g: &PcGroup, k: &Subgroup, q: Arc<Quotient>) -> Result<Self> {
        let l = q.kernel().clone();
        if !l.is_subgroup_of(g, k) {
            return Err(Error::Precondition("section needs L <= K".into()));
        }
        let qg = q.group();
        let kbar = q.project_subgroup(g, k);
        for x in kbar.basis() {
            for y in kbar.basis() {
                if !qg.commutator(x, y).is_identity() {
                    return Err(Error::Precondition("K/L is not abelian".into()));
                }
            }
        }
        let r = kbar.rank_log();
        let p = g.prime() as i128;
        // relation lattice: p e_i - coords(b_i^p)
        let mut rel = vec![vec![0i128; r]; r];
        for (i, b) in kbar.basis().iter().enumerate() {
            let c = kbar.coordinates(qg, &qg.pow(b, p as u64)).expect("power stays in K/L");
            for (j, &e) in c.iter().enumerate() {
                rel[i][j] -= e as i128;
            }
            rel[i][i] += p;
        }
        let smith = smith_diagonalize(&rel);
        let keep: Vec<usize> = (0..r).filter(|&j| smith.diagonal[j].abs() > 1).collect();
        let moduli: Vec<u64> = keep.iter().map(|&j| smith.diagonal[j].abs().to_u64().expect("fits")).collect();
        let v: Vec<Vec<i128>> = (0..r).map(|i| keep.iter().map(|&j| smith.v[i][j]).collect()).collect();
        let witnesses = keep
            .iter()
            .map(|&j| {
                let mut acc = qg.identity();
                for (b, x) in kbar.basis().iter().zip(&smith.v_inv[j]) {
                    acc = qg.mul(&acc, &qg.pow_signed(b, *x as i64));
                }
                q.lift(g, &acc)
            })
            .collect();
        let s = AbelianSection { k: k.clone(), l, quotient: q, kbar, moduli, v, witnesses };
        for (j, w) in s.witnesses.iter().enumerate() {
            let y = s.coords(g, w).expect("witness lies in K");
            let expect: Vec<u64> = (0..s.moduli.len()).map(|c| (c == j) as u64).collect();
            if y != expect {
                return Err(Error::Internal("section coordinates do not invert the basis".into()));
            }
        }
        Ok(s)
    }

    pub fn k(&self) -> &Subgroup {
        &self.k
    }

    pub fn l(&self) -> &Subgroup {
        &self.l
    }

    /// Invariants `d_j`.
    pub fn moduli(&self) -> &[u64] {
        &self.moduli
    }

    pub fn order(&self) -> u64 {
        self.moduli.iter().product()
    }

    pub fn is_trivial(&self) -> bool {
        self.moduli.is_empty()
    }

    /// Elements of `K` mapping to the standard basis of `A`.
    pub fn witnesses(&self) -> &[Element] {
        &self.witnesses
    }

    /// Coordinates of `x in K`, or `None` if `x` is outside `K`.
    pub fn coords(&self, g: &PcGroup, x: &Element) -> Option<Vec<u64>> {
        let qg = self.quotient.group();
        let e = self.kbar.coordinates(qg, &self.quotient.project(g, x))?;
        Some(
            self.moduli
                .iter()
                .enumerate()
                .map(|(c, &d)| {
                    let s: i128 = e.iter().zip(&self.v).map(|(&ei, row)| ei as i128 * row[c]).sum();
                    s.rem_euclid(d as i128) as u64
                })
                .collect(),
        )
    }

    /// An element of `K` with the given coordinates.
    pub fn element(&self, g: &PcGroup, y: &[u64]) -> Element {
        let mut acc = g.identity();
        for (w, &e) in self.witnesses.iter().zip(y) {
            acc = g.mul(&acc, &g.pow(w, e));
        }
        acc
    }

    /// Matrix of `a -> a^x`.
    pub fn action(&self, g: &PcGroup, x: &Element) -> SectionEndomorphism {
        let rows = self
            .witnesses
            .iter()
            .map(|w| self.coords(g, &g.conjugate(w, x)).expect("K is normal"))
            .collect();
        SectionEndomorphism::new(self.moduli.clone(), rows).expect("conjugation is a homomorphism")
    }

    /// `action(xy) = action(x) action(y)` on all pairs of pc generators.
    pub fn check_action_homomorphism(&self, g: &PcGroup) -> bool {
        let gens = g.generators();
        let mats: Vec<SectionEndomorphism> = gens.iter().map(|x| self.action(g, x)).collect();
        gens.iter().enumerate().all(|(i, x)| {
            gens.iter().enumerate().all(|(j, y)| self.action(g, &g.mul(x, y)) == mats[i].then(&mats[j]))
        })
    }

    /// `P(x)` acting on `A`.
    pub fn apply_poly(&self, g: &PcGroup, p: &IntPoly, x: &Element) -> SectionEndomorphism {
        self.action(g, x).eval_poly(p)
    }

    fn witness_row(&self, x: &Element, e: &SectionEndomorphism, pred: impl Fn(&[u64]) -> bool) -> Option<SectionWitness> {
        e.rows()
            .iter()
            .position(|row| !pred(row))
            .map(|j| SectionWitness { g: x.clone(), a: self.witnesses[j].clone() })
    }

    /// `f(t)` and `f(t^-1)` vanish on `A` for every `t` in `s`.
    pub fn verify_annihilation(&self, g: &PcGroup, f: &IntPoly, s: &[Element]) -> Result<(), SectionWitness> {
        for t in s {
            for x in [t.clone(), g.inverse(t)] {
                let e = self.apply_poly(g, f, &x);
                if let Some(w) = self.witness_row(&x, &e, |row| row.iter().all(|&v| v == 0)) {
                    return Err(w);
                }
            }
        }
        Ok(())
    }

    fn minus_one_pow(&self, g: &PcGroup, x: &Element, r: u32) -> SectionEndomorphism {
        let m = self.action(g, x);
        m.sub(&SectionEndomorphism::identity(&self.moduli)).pow(r)
    }

    /// `[A, _r x] <= A^p`
    pub fn engel_mod_p_check(&self, g: &PcGroup, x: &Element, r: u32) -> Result<(), SectionWitness> {
        self.power_step(g, x, r, 0)
    }

    /// `[A^{p^i}, _r x] <= A^{p^{i+1}}`
    fn power_step(&self, g: &PcGroup, x: &Element, r: u32, i: u32) -> Result<(), SectionWitness> {
        let e = self.minus_one_pow(g, x, r);
        match e.first_outside_power(g.prime() as u64, i, i + 1) {
            None => Ok(()),
            Some(j) => Err(SectionWitness {
                g: x.clone(),
                a: g.pow(&self.witnesses[j], (g.prime() as u64).pow(i)),
            }),
        }
    }

    /// `[A, _n x^k] = 1`
    pub fn engel_power_check(&self, g: &PcGroup, x: &Element, n: u32, k: u64) -> Result<(), SectionWitness> {
        let xk = g.pow(x, k);
        let e = self.minus_one_pow(g, &xk, n);
        match self.witness_row(&xk, &e, |row| row.iter().all(|&v| v == 0)) {
            None => Ok(()),
            Some(w) => Err(w),
        }
    }

    /// The chain `[A^{p^i}, _r x^k] <= A^{p^{i+1}}` for `i < s` (checked for `x`
    /// as well), `[A^{p^s}, _l x^k] = 1`, and then `[A, _n x^k] = 1` for
    /// `n = s r + l`.
    pub fn stratified_engel_check(
        &self,
        g: &PcGroup,
        x: &Element,
        s: u32,
        r: u32,
        ell: u32,
        k: u64,
    ) -> Result<u32, StratifiedFailure> {
        let xk = g.pow(x, k);
        for i in 0..s {
            for y in [x, &xk] {
                self.power_step(g, y, r, i)
                    .map_err(|witness| StratifiedFailure { step: 1, level: i, witness })?;
            }
        }
        let e = self.minus_one_pow(g, &xk, ell);
        if let Some(j) = e.first_outside_power(g.prime() as u64, s, u32::MAX) {
            return Err(StratifiedFailure {
                step: 2,
                level: s,
                witness: SectionWitness { g: xk, a: g.pow(&self.witnesses[j], (g.prime() as u64).pow(s)) },
            });
        }
        let n = s * r + ell;
        self.engel_power_check(g, x, n, k)
            .map_err(|witness| StratifiedFailure { step: 3, level: s, witness })?;
        Ok(n)
    }

    /// Least `c >= 1` with `[A, _c H] = 1`, computed on subgroups of `G/L`.
    pub fn action_class(&self, g: &PcGroup, h: &Subgroup) -> usize {
        let q = &self.quotient;
        let hbar = q.project_subgroup(g, h);
        let mut cur = self.kbar.clone();
        let mut c = 0;
        while !cur.is_trivial() {
            cur = q.group().commutator_subgroup_in(&cur, &hbar, &hbar);
            c += 1;
        }
        c.max(1)
    }
}
