use std::collections::{BTreeSet, HashSet, VecDeque};

use crate::pcgroup::{Element, PcGroup, PcPresentation};
use crate::{Error, Result};

/// Subgroup given by its canonical induced pc sequence.
///
/// Basis elements have pairwise distinct depths, leading exponent 1 and zero
/// exponent at the depth of every other basis element, so equal subgroups have
/// equal bases.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subgroup {
    basis: Vec<Element>,
}

fn inv_mod(a: u32, p: u32) -> u32 {
    (1..p).find(|&b| (a as u64 * b as u64) % p as u64 == 1).expect("p prime")
}

impl Subgroup {
    pub fn trivial() -> Self {
        Subgroup { basis: Vec::new() }
    }

    pub fn basis(&self) -> &[Element] {
        &self.basis
    }

    pub fn depths(&self) -> Vec<usize> {
        self.basis.iter().map(|b| b.depth().expect("nontrivial basis element")).collect()
    }

    /// `log_p |H|`
    pub fn rank_log(&self) -> usize {
        self.basis.len()
    }

    pub fn order(&self, g: &PcGroup) -> u64 {
        (g.prime() as u64).pow(self.basis.len() as u32)
    }

    pub fn is_trivial(&self) -> bool {
        self.basis.is_empty()
    }

    /// Reduce `x` modulo the basis from the right; identity iff `x` is a member.
    pub fn sift(&self, g: &PcGroup, x: &Element) -> Element {
        let mut x = x.clone();
        for b in &self.basis {
            let d = b.depth().expect("nontrivial basis element");
            let e = x.0[d];
            if e != 0 {
                x = g.mul(&x, &g.pow(b, (g.prime() - e) as u64));
            }
        }
        x
    }

    pub fn contains(&self, g: &PcGroup, x: &Element) -> bool {
        self.sift(g, x).is_identity()
    }

    pub fn is_subgroup_of(&self, g: &PcGroup, other: &Subgroup) -> bool {
        self.basis.iter().all(|b| other.contains(g, b))
    }

    /// Exponents `e` with `x = b_1^{e_1} ... b_k^{e_k}`, or `None` if `x` is not a member.
    pub fn coordinates(&self, g: &PcGroup, x: &Element) -> Option<Vec<u32>> {
        let mut y = x.clone();
        let mut out = Vec::with_capacity(self.basis.len());
        for b in &self.basis {
            let d = b.depth().expect("nontrivial basis element");
            let e = y.0[d];
            out.push(e);
            if e != 0 {
                y = g.mul(&g.pow(&g.inverse(b), e as u64), &y);
            }
        }
        y.is_identity().then_some(out)
    }

    pub fn element_from_coordinates(&self, g: &PcGroup, coords: &[u32]) -> Element {
        let mut acc = g.identity();
        for (b, &e) in self.basis.iter().zip(coords) {
            if e != 0 {
                acc = g.mul(&acc, &g.pow(b, e as u64));
            }
        }
        acc
    }

    /// All elements, in coordinate order.
    pub fn elements(&self, g: &PcGroup, limit: u64) -> Result<Vec<Element>> {
        let order = self.order(g);
        if order > limit {
            return Err(Error::Budget { what: "subgroup enumeration".into(), budget: limit });
        }
        let mut out = vec![g.identity()];
        for b in self.basis.iter().rev() {
            let mut powers = vec![g.identity()];
            for _ in 1..g.prime() {
                let last = powers.last().unwrap();
                powers.push(g.mul(last, b));
            }
            let mut next = Vec::with_capacity(out.len() * powers.len());
            for pw in &powers {
                for x in &out {
                    next.push(g.mul(pw, x));
                }
            }
            out = next;
        }
        Ok(out)
    }
}

impl PcGroup {
    pub fn whole(&self) -> Subgroup {
        Subgroup { basis: self.generators() }
    }

    fn closure_inner(&self, gens: &[Element], conj_by: &[Element]) -> Subgroup {
        let n = self.ngens();
        let p = self.prime();
        let mut slots: Vec<Option<Element>> = vec![None; n];
        let mut queue: VecDeque<Element> = gens.iter().cloned().collect();
        while let Some(mut x) = queue.pop_front() {
            while let Some(d) = x.depth() {
                match &slots[d] {
                    Some(b) => {
                        let e = x.0[d];
                        x = self.mul(&x, &self.pow(b, (p - e) as u64));
                    }
                    None => {
                        let e = x.0[d];
                        let x1 = self.pow(&x, inv_mod(e, p) as u64);
                        queue.push_back(self.pow(&x1, p as u64));
                        for b in slots.iter().flatten() {
                            queue.push_back(self.commutator(&x1, b));
                        }
                        for c in conj_by {
                            queue.push_back(self.commutator(&x1, c));
                        }
                        slots[d] = Some(x1);
                        break;
                    }
                }
            }
        }
        let mut basis: Vec<Element> = slots.into_iter().flatten().collect();
        // clear every basis depth from the other basis elements
        for k in 0..basis.len() {
            let d = basis[k].depth().unwrap();
            let bk = basis[k].clone();
            for (m, other) in basis.iter_mut().enumerate() {
                if m != k && other.0[d] != 0 {
                    let e = other.0[d];
                    *other = self.mul(other, &self.pow(&bk, (p - e) as u64));
                }
            }
        }
        Subgroup { basis }
    }

    /// Subgroup generated by `gens`.
    pub fn closure(&self, gens: &[Element]) -> Subgroup {
        self.closure_inner(gens, &[])
    }

    /// Normal closure of `gens` in `G`.
    pub fn normal_closure(&self, gens: &[Element]) -> Subgroup {
        self.closure_inner(gens, &self.generators())
    }

    /// Normal closure of `gens` in the subgroup `h` (which must contain them).
    pub fn normal_closure_in(&self, h: &Subgroup, gens: &[Element]) -> Subgroup {
        self.closure_inner(gens, h.basis())
    }

    pub fn join(&self, a: &Subgroup, b: &Subgroup) -> Subgroup {
        let gens: Vec<Element> = a.basis().iter().chain(b.basis()).cloned().collect();
        self.closure(&gens)
    }

    /// `[A, B]` for subgroups `A, B` both normalized by `within`.
    pub fn commutator_subgroup_in(&self, a: &Subgroup, b: &Subgroup, within: &Subgroup) -> Subgroup {
        let mut gens = Vec::new();
        for x in a.basis() {
            for y in b.basis() {
                gens.push(self.commutator(x, y));
            }
        }
        self.normal_closure_in(within, &gens)
    }

    /// `[A, B]` for normal subgroups of `G`.
    pub fn commutator_subgroup(&self, a: &Subgroup, b: &Subgroup) -> Subgroup {
        self.commutator_subgroup_in(a, b, &self.whole())
    }

    pub fn derived_subgroup(&self, h: &Subgroup) -> Subgroup {
        self.commutator_subgroup_in(h, h, h)
    }

    /// `h = gamma_1(h) > gamma_2(h) > ... > 1`
    pub fn lower_central_series(&self, h: &Subgroup) -> Vec<Subgroup> {
        let mut series = vec![h.clone()];
        loop {
            let last = series.last().unwrap();
            if last.is_trivial() {
                break;
            }
            let next = self.commutator_subgroup_in(last, h, h);
            if &next == last {
                break;
            }
            series.push(next);
        }
        series
    }

    /// `gamma_k(h)`, with `gamma_1(h) = h`.
    pub fn gamma(&self, h: &Subgroup, k: usize) -> Subgroup {
        let mut cur = h.clone();
        for _ in 1..k {
            if cur.is_trivial() {
                break;
            }
            cur = self.commutator_subgroup_in(&cur, h, h);
        }
        cur
    }

    /// Nilpotency class (0 for the trivial group).
    pub fn nilpotency_class(&self, h: &Subgroup) -> usize {
        self.lower_central_series(h).len() - 1
    }

    pub fn derived_series(&self, h: &Subgroup) -> Vec<Subgroup> {
        let mut series = vec![h.clone()];
        while !series.last().unwrap().is_trivial() {
            let next = self.derived_subgroup(series.last().unwrap());
            series.push(next);
        }
        series
    }

    pub fn derived_length(&self, h: &Subgroup) -> usize {
        self.derived_series(h).len() - 1
    }

    /// `h^k = < x^k : x in h >`, by enumeration of `h`.
    pub fn power_subgroup(&self, h: &Subgroup, k: u64, limit: u64) -> Result<Subgroup> {
        let mut current = Subgroup::trivial();
        for x in h.elements(self, limit)? {
            let y = self.pow(&x, k);
            if !current.contains(self, &y) {
                let mut gens = current.basis().to_vec();
                gens.push(y);
                current = self.closure(&gens);
            }
        }
        Ok(current)
    }

    /// Largest element order in `h`.
    pub fn exponent(&self, h: &Subgroup, limit: u64) -> Result<u64> {
        Ok(h.elements(self, limit)?.iter().map(|x| self.element_order(x)).max().unwrap_or(1))
    }

    /// `[h, h] <= h^p` (`h^4` when `p = 2`).
    pub fn is_powerful(&self, h: &Subgroup, limit: u64) -> Result<bool> {
        let k = if self.prime() == 2 { 4 } else { self.prime() as u64 };
        let pw = self.power_subgroup(h, k, limit)?;
        Ok(self.derived_subgroup(h).is_subgroup_of(self, &pw))
    }

    /// `Phi(h) = h^p [h, h]`
    pub fn frattini(&self, h: &Subgroup, limit: u64) -> Result<Subgroup> {
        let pw = self.power_subgroup(h, self.prime() as u64, limit)?;
        Ok(self.join(&pw, &self.derived_subgroup(h)))
    }

    /// Minimal generating set of `h`, drawn greedily from `candidates`
    /// (which must generate `h`) or from the basis of `h`.
    pub fn burnside_generators(
        &self,
        h: &Subgroup,
        candidates: Option<&[Element]>,
        limit: u64,
    ) -> Result<Vec<Element>> {
        let phi = self.frattini(h, limit)?;
        let pool: Vec<Element> = match candidates {
            Some(c) => c.to_vec(),
            None => h.basis().to_vec(),
        };
        let mut span = phi.clone();
        let mut chosen = Vec::new();
        for x in pool {
            if span.rank_log() == h.rank_log() {
                break;
            }
            if !span.contains(self, &x) {
                chosen.push(x.clone());
                let mut gens = span.basis().to_vec();
                gens.push(x);
                span = self.closure(&gens);
            }
        }
        if span.rank_log() != h.rank_log() {
            return Err(Error::Precondition("candidates do not generate the subgroup".into()));
        }
        Ok(chosen)
    }

    /// Orbit of `x` under conjugation by `G`.
    pub fn conjugacy_class(&self, x: &Element) -> Vec<Element> {
        let gens = self.generators();
        let mut seen: BTreeSet<Element> = BTreeSet::new();
        let mut queue = VecDeque::from([x.clone()]);
        seen.insert(x.clone());
        while let Some(y) = queue.pop_front() {
            for g in &gens {
                let z = self.conjugate(&y, g);
                if seen.insert(z.clone()) {
                    queue.push_back(z);
                }
            }
        }
        seen.into_iter().collect()
    }

    /// Union of the conjugacy classes of `xs`, deduplicated and sorted.
    pub fn conjugation_closure(&self, xs: &[Element]) -> Vec<Element> {
        let mut all: BTreeSet<Element> = BTreeSet::new();
        for x in xs {
            if !all.contains(x) {
                all.extend(self.conjugacy_class(x));
            }
        }
        all.into_iter().collect()
    }

    pub fn is_normal(&self, h: &Subgroup) -> bool {
        let gens = self.generators();
        h.basis().iter().all(|b| gens.iter().all(|g| h.contains(self, &self.conjugate(b, g))))
    }

    pub fn is_normal_subset(&self, xs: &[Element]) -> bool {
        let set: HashSet<&Element> = xs.iter().collect();
        let gens = self.generators();
        xs.iter().all(|x| gens.iter().all(|g| set.contains(&self.conjugate(x, g))))
    }

    /// All normal subgroups of `G`, ordered by size then basis; errors past `cap`.
    pub fn normal_subgroups(&self, cap: usize) -> Result<Vec<Subgroup>> {
        let order = self.order_u64().ok_or_else(|| Error::Budget {
            what: "normal subgroup enumeration".into(),
            budget: cap as u64,
        })?;
        let mut found: Vec<Subgroup> = vec![Subgroup::trivial()];
        let mut seen: HashSet<Subgroup> = found.iter().cloned().collect();
        let mut next = 0;
        while next < found.len() {
            let n = found[next].clone();
            next += 1;
            for idx in 0..order as usize {
                let x = self.element_at(idx);
                if n.contains(self, &x) {
                    continue;
                }
                let mut gens = n.basis().to_vec();
                gens.push(x);
                let m = self.normal_closure(&gens);
                if seen.insert(m.clone()) {
                    if found.len() >= cap {
                        return Err(Error::Budget {
                            what: "normal subgroup enumeration".into(),
                            budget: cap as u64,
                        });
                    }
                    found.push(m);
                }
            }
        }
        found.sort_by(|a, b| a.rank_log().cmp(&b.rank_log()).then_with(|| a.basis.cmp(&b.basis)));
        Ok(found)
    }

    /// `h` as a pc group in its own right, with the basis as pc generators.
    pub fn subgroup_as_group(&self, h: &Subgroup, names: Vec<String>) -> Result<PcGroup> {
        let k = h.rank_log();
        let mut pres = PcPresentation::new(self.prime(), names)?;
        let coord = |x: &Element| -> Result<Element> {
            h.coordinates(self, x)
                .map(Element)
                .ok_or_else(|| Error::Internal("subgroup not closed".into()))
        };
        for i in 0..k {
            let b = &h.basis()[i];
            pres.set_power(i, coord(&self.pow(b, self.prime() as u64))?)?;
            for j in i + 1..k {
                pres.set_commutator(j, i, coord(&self.commutator(&h.basis()[j], b))?)?;
            }
        }
        PcGroup::new(pres)
    }
}
