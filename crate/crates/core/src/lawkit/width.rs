use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::budget::Budget;
use crate::pcgroup::{Element, PcGroup};
use crate::{Error, Result};

const UNSEEN: u32 = u32::MAX;

/// Breadth-first layers of products of elements of `T ∪ T^-1`.
///
/// Layer `k` holds the elements first reached with `k` factors; the identity
/// is the empty product.
#[derive(Clone, Debug)]
pub struct WidthBfs {
    /// Least `m` with every element of `<T>` a product of at most `m` factors.
    pub m: usize,
    /// Number of elements first reached in each layer, starting with layer 0.
    pub layer_sizes: Vec<u64>,
    factors: Vec<Element>,
    dist: HashMap<usize, (u32, usize, u32)>,
}

impl WidthBfs {
    /// `|<T>|`
    pub fn reached(&self) -> u64 {
        self.layer_sizes.iter().sum()
    }

    /// Shortest factorization over `T ∪ T^-1`, or `None` outside `<T>`.
    pub fn factorization(&self, g: &PcGroup, y: &Element) -> Option<Vec<Element>> {
        let mut cur = g.index_of(y);
        let mut out = Vec::new();
        loop {
            let &(d, prev, f) = self.dist.get(&cur)?;
            if d == 0 {
                break;
            }
            out.push(self.factors[f as usize].clone());
            cur = prev;
        }
        out.reverse();
        Some(out)
    }
}

/// Width of `t` in `<t>`, by exhaustive breadth-first search.
pub fn width(g: &PcGroup, t: &[Element], budget: &Budget) -> Result<WidthBfs> {
    let target = g.closure(t).order(g);
    if target > budget.enumeration {
        return Err(Error::Budget { what: "width search".into(), budget: budget.enumeration });
    }
    let mut factors: BTreeSet<Element> = BTreeSet::new();
    for x in t {
        factors.insert(x.clone());
        factors.insert(g.inverse(x));
    }
    factors.remove(&g.identity());
    let factors: Vec<Element> = factors.into_iter().collect();
    let id = g.index_of(&g.identity());
    let mut dist = HashMap::new();
    dist.insert(id, (0u32, id, UNSEEN));
    let mut frontier = vec![id];
    let mut layer_sizes = vec![1u64];
    while !frontier.is_empty() {
        let d = layer_sizes.len() as u32;
        let mut next = Vec::new();
        for &x in &frontier {
            for (fi, f) in factors.iter().enumerate() {
                let y = g.mul_index(x, f);
                dist.entry(y).or_insert_with(|| {
                    next.push(y);
                    (d, x, fi as u32)
                });
            }
        }
        if next.is_empty() {
            break;
        }
        layer_sizes.push(next.len() as u64);
        frontier = next;
    }
    let bfs = WidthBfs { m: layer_sizes.len() - 1, layer_sizes, factors, dist };
    if bfs.reached() != target {
        return Err(Error::Internal("breadth-first search did not reach the generated subgroup".into()));
    }
    Ok(bfs)
}

/// `T_k = { [t_1, ..., t_k] : t_i in T }`, built as `{ [u, t] : u in T_{k-1}, t in T }`.
///
/// Requires `T` normal with `<T> = G`.
pub fn build_tk(g: &PcGroup, t: &[Element], k: usize) -> Result<Vec<Element>> {
    if k == 0 {
        return Err(Error::Precondition("T_k needs k >= 1".into()));
    }
    let base: Vec<Element> = t.iter().cloned().collect::<BTreeSet<_>>().into_iter().collect();
    if !g.is_normal_subset(&base) {
        return Err(Error::Precondition("T is not a normal subset".into()));
    }
    if g.closure(&base).rank_log() != g.ngens() {
        return Err(Error::Precondition("T does not generate the group".into()));
    }
    let mut cur = base.clone();
    for _ in 1..k {
        let mut next = BTreeSet::new();
        for u in &cur {
            for s in &base {
                next.insert(g.commutator(u, s));
            }
        }
        cur = next.into_iter().collect();
    }
    Ok(cur)
}

/// One factor of an expression over `T_k ∪ T_k^-1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignedFactor {
    /// Element of `T_k`.
    pub base: Element,
    pub inverted: bool,
}

/// `y` written as a product over `T_k ∪ T_k^-1`.
#[derive(Clone, Debug)]
pub struct GammaFactorization {
    pub factors: Vec<SignedFactor>,
    /// `m d^{k-1}`
    pub bound: u64,
}

impl GammaFactorization {
    pub fn product(&self, g: &PcGroup) -> Element {
        self.factors.iter().fold(g.identity(), |acc, f| {
            let x = if f.inverted { g.inverse(&f.base) } else { f.base.clone() };
            g.mul(&acc, &x)
        })
    }
}

/// Writes `y in gamma_k(G)` over `T_k ∪ T_k^-1` following the inductive
/// construction: `y = [g_1, t_1] ... [g_d, t_d]` with `t_i` a Burnside basis
/// from `T` and `g_i in gamma_{k-1}(G)` (found by search), then
/// `[u_1 ... u_s, t] = prod_j [u_j, t]^{u_{j+1} ... u_s}` for each `g_i`.
pub fn express_gamma_k(
    g: &PcGroup,
    t: &[Element],
    k: usize,
    y: &Element,
    budget: &Budget,
) -> Result<GammaFactorization> {
    let level1 = width(g, t, budget)?;
    let tset: Vec<Element> = t.iter().cloned().collect::<BTreeSet<_>>().into_iter().collect();
    let gens = g.burnside_generators(&g.whole(), Some(&tset), budget.enumeration)?;
    let d = gens.len() as u64;
    let fact = express_rec(g, &tset, &gens, &level1, k, y, budget)?;
    let bound = level1.m as u64 * d.pow(k.saturating_sub(1) as u32);
    let out = GammaFactorization { factors: fact, bound };
    if out.product(g) != *y {
        return Err(Error::Internal("factorization does not multiply back".into()));
    }
    Ok(out)
}

fn express_rec(
    g: &PcGroup,
    t: &[Element],
    gens: &[Element],
    level1: &WidthBfs,
    k: usize,
    y: &Element,
    budget: &Budget,
) -> Result<Vec<SignedFactor>> {
    let tk = build_tk(g, t, k)?;
    let tk_set: BTreeSet<&Element> = tk.iter().collect();
    let as_signed = |x: Element| -> Result<SignedFactor> {
        if tk_set.contains(&x) {
            return Ok(SignedFactor { base: x, inverted: false });
        }
        let xi = g.inverse(&x);
        if tk_set.contains(&xi) {
            return Ok(SignedFactor { base: xi, inverted: true });
        }
        Err(Error::Internal("expanded factor outside T_k ∪ T_k^-1".into()))
    };
    if k == 1 {
        let f = level1
            .factorization(g, y)
            .ok_or_else(|| Error::Precondition("element outside the group generated by T".into()))?;
        return f.into_iter().map(as_signed).collect();
    }
    let whole = g.whole();
    let prev = g.gamma(&whole, k - 1);
    let prev_elems = prev.elements(g, budget.enumeration)?;
    // layered search for y = [g_1, t_1] ... [g_d, t_d]
    let mut layers: Vec<BTreeMap<Element, (Element, Element)>> = Vec::new();
    let mut reach: BTreeMap<Element, (Element, Element)> = BTreeMap::new();
    reach.insert(g.identity(), (g.identity(), g.identity()));
    for ti in gens {
        let mut comms: BTreeMap<Element, Element> = BTreeMap::new();
        for x in &prev_elems {
            comms.entry(g.commutator(x, ti)).or_insert_with(|| x.clone());
        }
        let mut next: BTreeMap<Element, (Element, Element)> = BTreeMap::new();
        for z in reach.keys() {
            for (c, x) in &comms {
                next.entry(g.mul(z, c)).or_insert_with(|| (z.clone(), x.clone()));
            }
        }
        layers.push(std::mem::replace(&mut reach, next));
        if reach.len() as u64 > budget.enumeration {
            return Err(Error::Budget { what: "commutator decomposition search".into(), budget: budget.enumeration });
        }
    }
    if !reach.contains_key(y) {
        return Err(Error::Exhausted("no decomposition y = [g_1,t_1]...[g_d,t_d] found".into()));
    }
    let mut gi = vec![g.identity(); gens.len()];
    let mut cur = y.clone();
    for i in (0..gens.len()).rev() {
        let (z, x) = reach.get(&cur).expect("layer entry").clone();
        gi[i] = x;
        cur = z;
        reach = layers.pop().expect("layer");
    }
    let mut out = Vec::new();
    for (x, ti) in gi.iter().zip(gens) {
        let us = express_rec(g, t, gens, level1, k - 1, x, budget)?;
        let us: Vec<Element> = us
            .into_iter()
            .map(|f| if f.inverted { g.inverse(&f.base) } else { f.base })
            .collect();
        for j in 0..us.len() {
            let tail = g.product(&us[j + 1..]);
            out.push(as_signed(g.conjugate(&g.commutator(&us[j], ti), &tail))?);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pcgroup::PcPresentation;

    fn cyc9() -> PcGroup {
        let mut p = PcPresentation::new(3, vec!["a".into(), "a3".into()]).unwrap();
        p.set_power(0, Element(vec![0, 1])).unwrap();
        PcGroup::new(p).unwrap()
    }

    #[test]
    fn cyclic_width() {
        let g = cyc9();
        let w = width(&g, &[g.generator(0)], &Budget::default()).unwrap();
        assert_eq!(w.m, 4);
        assert_eq!(w.layer_sizes, vec![1, 2, 2, 2, 2]);
        let all: Vec<Element> = g.elements().collect();
        assert_eq!(width(&g, &all, &Budget::default()).unwrap().m, 1);
    }

    #[test]
    fn trivial_subset_has_width_zero() {
        let g = cyc9();
        assert_eq!(width(&g, &[g.identity()], &Budget::default()).unwrap().m, 0);
    }
}
