use std::sync::OnceLock;

use crate::pcgroup::{Element, PcPresentation};
use crate::{Error, Result};

/// Largest `order * ngens` for which a right-multiplication table is cached.
const TABLE_LIMIT: u64 = 1 << 24;

/// Largest group order whose consistency is additionally checked on all triples
/// when the group is constructed.
const CONSTRUCTION_TRIPLE_LIMIT: u64 = 64;

/// A finite p-group with a verified consistent power-commutator presentation.
///
/// Multiplication is collection: `x * g_i` moves `g_i` left past the tail of
/// `x` using the precomputed conjugates `g_j^{g_i} = g_j [g_j, g_i]`.
#[derive(Debug)]
pub struct PcGroup {
    pres: PcPresentation,
    /// `conj[j][i] = g_j^{g_i}` for `i < j`
    conj: Vec<Vec<Element>>,
    table: OnceLock<Option<Vec<u32>>>,
}

/// Associativity failure `(x y) z != x (y z)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AssociativityWitness {
    pub x: Element,
    pub y: Element,
    pub z: Element,
}

impl PcGroup {
    /// Build the collector and verify consistency; an inconsistent
    /// presentation is rejected with an associativity witness in the message.
    pub fn new(pres: PcPresentation) -> Result<Self> {
        let g = Self::unchecked(pres);
        if let Some(w) = g.overlap_check() {
            return Err(Error::Inconsistent(format!(
                "({})({})({}) associates differently",
                g.format(&w.x),
                g.format(&w.y),
                g.format(&w.z)
            )));
        }
        if g.order_u64().is_some_and(|o| o <= CONSTRUCTION_TRIPLE_LIMIT) {
            if let Some(w) = g.exhaustive_associativity() {
                return Err(Error::Inconsistent(format!(
                    "({})({})({}) associates differently",
                    g.format(&w.x),
                    g.format(&w.y),
                    g.format(&w.z)
                )));
            }
        }
        Ok(g)
    }

    /// Collector without the consistency obligation; only for checking.
    pub fn unchecked(pres: PcPresentation) -> Self {
        let n = pres.ngens();
        let mut g = PcGroup {
            conj: (0..n).map(|j| vec![Element::identity(n); j]).collect(),
            pres,
            table: OnceLock::new(),
        };
        // conj[j][i] only needs conjugates with larger lower index
        for i in (0..n).rev() {
            for j in i + 1..n {
                let mut x = Element::generator(n, j).0;
                let c = g.pres.commutator(j, i).0.clone();
                g.mul_into(&mut x, &c);
                g.conj[j][i] = Element(x);
            }
        }
        g
    }

    pub fn presentation(&self) -> &PcPresentation {
        &self.pres
    }

    pub fn prime(&self) -> u32 {
        self.pres.prime()
    }

    pub fn ngens(&self) -> usize {
        self.pres.ngens()
    }

    pub fn names(&self) -> &[String] {
        self.pres.names()
    }

    /// `|G| = p^n`, if it fits.
    pub fn order_u64(&self) -> Option<u64> {
        (self.prime() as u64).checked_pow(self.ngens() as u32)
    }

    pub fn identity(&self) -> Element {
        Element::identity(self.ngens())
    }

    pub fn generator(&self, i: usize) -> Element {
        Element::generator(self.ngens(), i)
    }

    pub fn generators(&self) -> Vec<Element> {
        (0..self.ngens()).map(|i| self.generator(i)).collect()
    }

    /// `x := x * g_i`
    fn mul_gen(&self, x: &mut [u32], i: usize) {
        let n = x.len();
        let p = self.prime();
        let tail_nonzero = x[i + 1..].iter().any(|&e| e != 0);
        let mut tail = vec![0u32; n];
        if tail_nonzero {
            // tail^{g_i} = prod_j (g_j^{g_i})^{e_j}, inside <g_{i+1}, ...>
            for j in i + 1..n {
                for _ in 0..x[j] {
                    let c = &self.conj[j][i].0;
                    self.mul_into(&mut tail, c);
                }
            }
        }
        x[i] += 1;
        if x[i] == p {
            x[i] = 0;
            let mut head = self.pres.power(i).0.clone();
            if tail_nonzero {
                self.mul_into(&mut head, &tail);
            }
            tail = head;
        }
        x[i + 1..].copy_from_slice(&tail[i + 1..]);
    }

    fn mul_into(&self, x: &mut [u32], y: &[u32]) {
        for (j, &e) in y.iter().enumerate() {
            for _ in 0..e {
                self.mul_gen(x, j);
            }
        }
    }

    /// Product by collection, never using the cached table.
    pub fn collect_product(&self, x: &Element, y: &Element) -> Element {
        let mut v = x.0.clone();
        self.mul_into(&mut v, &y.0);
        Element(v)
    }

    /// Normal form of a word over pc generators with integer exponents.
    pub fn collect(&self, word: &[(usize, i64)]) -> Element {
        let mut acc = self.identity();
        for &(g, e) in word {
            let x = self.pow_signed(&self.generator(g), e);
            acc = self.mul(&acc, &x);
        }
        acc
    }

    fn table(&self) -> Option<&Vec<u32>> {
        self.table
            .get_or_init(|| {
                let order = self.order_u64()?;
                let n = self.ngens() as u64;
                if order.checked_mul(n)? > TABLE_LIMIT {
                    return None;
                }
                let mut t = Vec::with_capacity((order * n) as usize);
                for idx in 0..order as usize {
                    let x = self.element_at(idx);
                    for i in 0..n as usize {
                        let mut v = x.0.clone();
                        self.mul_gen(&mut v, i);
                        t.push(self.index_of(&Element(v)) as u32);
                    }
                }
                Some(t)
            })
            .as_ref()
    }

    /// Mixed-radix index of an element, generator 0 most significant.
    pub fn index_of(&self, x: &Element) -> usize {
        let p = self.prime() as usize;
        x.0.iter().fold(0usize, |acc, &e| acc * p + e as usize)
    }

    pub fn element_at(&self, mut idx: usize) -> Element {
        let p = self.prime() as usize;
        let n = self.ngens();
        let mut v = vec![0u32; n];
        for i in (0..n).rev() {
            v[i] = (idx % p) as u32;
            idx /= p;
        }
        Element(v)
    }

    /// All elements in index order.
    pub fn elements(&self) -> impl Iterator<Item = Element> + '_ {
        let order = self.order_u64().expect("group order fits in u64") as usize;
        (0..order).map(|i| self.element_at(i))
    }

    /// `x * y` on element indices; uses the cached table when available.
    pub fn mul_index(&self, x: usize, y: &Element) -> usize {
        match self.table() {
            Some(t) => {
                let n = self.ngens();
                let mut cur = x;
                for (j, &e) in y.0.iter().enumerate() {
                    for _ in 0..e {
                        cur = t[cur * n + j] as usize;
                    }
                }
                cur
            }
            None => self.index_of(&self.collect_product(&self.element_at(x), y)),
        }
    }

    pub fn mul(&self, x: &Element, y: &Element) -> Element {
        if y.is_identity() {
            return x.clone();
        }
        if self.table().is_some() {
            self.element_at(self.mul_index(self.index_of(x), y))
        } else {
            self.collect_product(x, y)
        }
    }

    pub fn product<'a>(&self, xs: impl IntoIterator<Item = &'a Element>) -> Element {
        xs.into_iter().fold(self.identity(), |acc, x| self.mul(&acc, x))
    }

    pub fn inverse(&self, x: &Element) -> Element {
        // right-multiply by generator powers until every position is cleared
        let p = self.prime();
        let mut z = x.clone();
        let mut y = self.identity();
        for i in 0..self.ngens() {
            let e = z.0[i];
            if e != 0 {
                let mut step = self.identity();
                step.0[i] = p - e;
                z = self.mul(&z, &step);
                y = self.mul(&y, &step);
            }
        }
        debug_assert!(z.is_identity());
        y
    }

    pub fn pow(&self, x: &Element, k: u64) -> Element {
        let k = match self.order_u64() {
            Some(o) => k % o,
            None => k,
        };
        let mut base = x.clone();
        let mut acc = self.identity();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            k >>= 1;
            if k > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    pub fn pow_signed(&self, x: &Element, k: i64) -> Element {
        if k >= 0 {
            self.pow(x, k as u64)
        } else {
            self.inverse(&self.pow(x, k.unsigned_abs()))
        }
    }

    /// `x^g = g^{-1} x g`
    pub fn conjugate(&self, x: &Element, g: &Element) -> Element {
        self.mul(&self.mul(&self.inverse(g), x), g)
    }

    /// `[x, y] = x^{-1} y^{-1} x y`
    pub fn commutator(&self, x: &Element, y: &Element) -> Element {
        let xi = self.inverse(x);
        let yi = self.inverse(y);
        self.product([&xi, &yi, x, y])
    }

    /// Left-normed `[x_1, ..., x_k]`.
    pub fn commutator_seq(&self, xs: &[Element]) -> Element {
        let mut it = xs.iter();
        let first = it.next().cloned().unwrap_or_else(|| self.identity());
        it.fold(first, |acc, x| self.commutator(&acc, x))
    }

    /// Order of an element (a power of p).
    pub fn element_order(&self, x: &Element) -> u64 {
        let p = self.prime() as u64;
        let mut cur = x.clone();
        let mut ord = 1u64;
        while !cur.is_identity() {
            cur = self.pow(&cur, p);
            ord *= p;
        }
        ord
    }

    /// Standard overlap tests for consistency of the rewriting system.
    pub fn overlap_check(&self) -> Option<AssociativityWitness> {
        let n = self.ngens();
        let p = self.prime();
        let g = |i: usize| self.generator(i);
        let gpow = |i: usize, e: u32| {
            let mut v = self.identity();
            v.0[i] = e;
            v
        };
        let assoc = |x: Element, y: Element, z: Element| -> Option<AssociativityWitness> {
            let l = self.collect_product(&self.collect_product(&x, &y), &z);
            let r = self.collect_product(&x, &self.collect_product(&y, &z));
            (l != r).then_some(AssociativityWitness { x, y, z })
        };
        for k in 0..n {
            for j in 0..k {
                for i in 0..j {
                    if let Some(w) = assoc(g(k), g(j), g(i)) {
                        return Some(w);
                    }
                }
            }
        }
        for j in 0..n {
            for i in 0..j {
                if let Some(w) = assoc(gpow(j, p - 1), g(j), g(i)) {
                    return Some(w);
                }
                if let Some(w) = assoc(g(j), gpow(i, p - 1), g(i)) {
                    return Some(w);
                }
            }
        }
        for i in 0..n {
            if let Some(w) = assoc(g(i), gpow(i, p - 1), g(i)) {
                return Some(w);
            }
        }
        None
    }

    /// Associativity on every triple; intended for small groups.
    pub fn exhaustive_associativity(&self) -> Option<AssociativityWitness> {
        let order = self.order_u64()? as usize;
        let table: Vec<Vec<usize>> = (0..order)
            .map(|a| (0..order).map(|b| self.index_of(&self.collect_product(&self.element_at(a), &self.element_at(b)))).collect())
            .collect();
        for a in 0..order {
            for b in 0..order {
                let ab = table[a][b];
                for c in 0..order {
                    if table[ab][c] != table[a][table[b][c]] {
                        return Some(AssociativityWitness {
                            x: self.element_at(a),
                            y: self.element_at(b),
                            z: self.element_at(c),
                        });
                    }
                }
            }
        }
        None
    }

    /// Normal form written with generator names, e.g. `a^2 b c`; `1` for the identity.
    pub fn format(&self, x: &Element) -> String {
        let parts: Vec<String> = x
            .0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e != 0)
            .map(|(i, &e)| {
                if e == 1 {
                    self.names()[i].clone()
                } else {
                    format!("{}^{}", self.names()[i], e)
                }
            })
            .collect();
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join(" ")
        }
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.names().iter().position(|n| n == name)
    }
}
