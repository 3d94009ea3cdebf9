//! Line-oriented instance files.
//!
//! ```text
//! # comments start with '#'
//! name heis3
//! prime 3
//! gens a b c
//! power a = b^2 c          (normal form over later generators)
//! comm b a = c             ([b, a] for b after a)
//! subset conj-closure a, b | word-values [x1,x2] | a, b c^2
//! law x1 x2 = x2 x1
//! word [x1,x2]
//! ```

use std::fmt::Write as _;

use crate::lawkit::{Law, Word};
use crate::pcgroup::{Element, PcGroup, PcPresentation};
use crate::{Error, Result};

/// Product of generator powers as written, e.g. `a^2 b^-1`.
pub type ElementExpr = Vec<(usize, i64)>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SubsetSpec {
    /// Union of the conjugacy classes of the listed elements.
    ConjClosure(Vec<ElementExpr>),
    /// All values of a word.
    WordValues(Word),
    Elements(Vec<ElementExpr>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InstanceFile {
    pub name: Option<String>,
    pub prime: u32,
    pub gens: Vec<String>,
    /// `(i, rhs)` for nontrivial `g_i^p`
    pub powers: Vec<(usize, Element)>,
    /// `(j, i, rhs)` for nontrivial `[g_j, g_i]`
    pub comms: Vec<(usize, usize, Element)>,
    pub subset: Option<SubsetSpec>,
    pub law: Option<Law>,
    pub word: Option<Word>,
}

fn perr(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, column, message: message.into() }
}

/// Moves a single-line parse error to `line`, offset by `col0` columns.
fn relocate(e: Error, line: usize, col0: usize) -> Error {
    match e {
        Error::Parse { column, message, .. } => Error::Parse { line, column: column + col0, message },
        other => other,
    }
}

fn is_ident(s: &str) -> bool {
    let mut cs = s.chars();
    matches!(cs.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && cs.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Parse `a^2 b^-1 c` (or `1`) against generator names; columns are 1-based in `text`.
pub fn parse_element_expr(text: &str, names: &[String]) -> Result<ElementExpr> {
    let mut out = Vec::new();
    let mut offset = 0;
    for tok in text.split_whitespace() {
        let at = text[offset..].find(tok).map(|i| i + offset).unwrap_or(offset);
        offset = at + tok.len();
        let col = text[..at].chars().count() + 1;
        if tok == "1" {
            continue;
        }
        let (name, exp) = match tok.split_once('^') {
            Some((n, e)) => {
                let k: i64 = e
                    .parse()
                    .map_err(|_| perr(1, col + n.chars().count() + 1, format!("bad exponent '{e}'")))?;
                (n, k)
            }
            None => (tok, 1),
        };
        let g = names
            .iter()
            .position(|x| x == name)
            .ok_or_else(|| perr(1, col, format!("unknown generator '{name}'")))?;
        out.push((g, exp));
    }
    Ok(out)
}

/// Comma-separated element list.
fn parse_element_list(text: &str, names: &[String]) -> Result<Vec<ElementExpr>> {
    let mut out = Vec::new();
    let mut col0 = 0;
    for part in text.split(',') {
        out.push(parse_element_expr(part, names).map_err(|e| relocate(e, 1, col0))?);
        col0 += part.chars().count() + 1;
    }
    Ok(out)
}

impl SubsetSpec {
    pub fn parse(text: &str, names: &[String]) -> Result<SubsetSpec> {
        let t = text.trim_start();
        let lead = text.chars().count() - t.chars().count();
        if let Some(rest) = t.strip_prefix("conj-closure") {
            let col0 = lead + "conj-closure".len();
            return parse_element_list(rest, names)
                .map(SubsetSpec::ConjClosure)
                .map_err(|e| relocate(e, 1, col0));
        }
        if let Some(rest) = t.strip_prefix("word-values") {
            let col0 = lead + "word-values".len();
            return Word::parse(rest).map(SubsetSpec::WordValues).map_err(|e| relocate(e, 1, col0));
        }
        parse_element_list(text, names).map(SubsetSpec::Elements)
    }

    /// Materialize as a sorted, deduplicated element list.
    pub fn resolve(&self, g: &PcGroup, budget: &crate::budget::Budget) -> Result<Vec<Element>> {
        let mut v = match self {
            SubsetSpec::ConjClosure(xs) => {
                let els: Vec<Element> = xs.iter().map(|x| g.collect(x)).collect();
                g.conjugation_closure(&els)
            }
            SubsetSpec::WordValues(w) => crate::lawkit::word_values(g, w, budget)?.values,
            SubsetSpec::Elements(xs) => xs.iter().map(|x| g.collect(x)).collect(),
        };
        v.sort();
        v.dedup();
        Ok(v)
    }

    fn emit(&self, names: &[String]) -> String {
        match self {
            SubsetSpec::ConjClosure(xs) => format!("conj-closure {}", emit_list(xs, names)),
            SubsetSpec::WordValues(w) => format!("word-values {w}"),
            SubsetSpec::Elements(xs) => emit_list(xs, names),
        }
    }
}

fn emit_expr(x: &ElementExpr, names: &[String]) -> String {
    if x.is_empty() {
        return "1".into();
    }
    x.iter()
        .map(|&(g, e)| if e == 1 { names[g].clone() } else { format!("{}^{}", names[g], e) })
        .collect::<Vec<_>>()
        .join(" ")
}

fn emit_list(xs: &[ElementExpr], names: &[String]) -> String {
    xs.iter().map(|x| emit_expr(x, names)).collect::<Vec<_>>().join(", ")
}

fn emit_normal(x: &Element, names: &[String]) -> String {
    let expr: ElementExpr =
        x.0.iter().enumerate().filter(|(_, &e)| e != 0).map(|(i, &e)| (i, e as i64)).collect();
    emit_expr(&expr, names)
}

impl InstanceFile {
    pub fn parse(text: &str) -> Result<InstanceFile> {
        let mut name = None;
        let mut prime: Option<u32> = None;
        let mut gens: Option<Vec<String>> = None;
        let mut powers = Vec::new();
        let mut comms = Vec::new();
        let mut subset = None;
        let mut law = None;
        let mut word = None;
        for (ln, raw) in text.lines().enumerate() {
            let line_no = ln + 1;
            let line = raw.split('#').next().unwrap_or("");
            let trimmed = line.trim_start();
            if trimmed.trim().is_empty() {
                continue;
            }
            let indent = line.chars().count() - trimmed.chars().count();
            let (key, rest) = trimmed.split_once(char::is_whitespace).unwrap_or((trimmed, ""));
            let rest_col = indent + key.chars().count() + 1;
            let need_gens = |gens: &Option<Vec<String>>| -> Result<Vec<String>> {
                gens.clone().ok_or_else(|| perr(line_no, indent + 1, "'gens' must come first"))
            };
            match key {
                "name" => name = Some(rest.trim().to_string()),
                "prime" => {
                    let p: u32 = rest
                        .trim()
                        .parse()
                        .map_err(|_| perr(line_no, rest_col + 1, "expected a prime"))?;
                    if !crate::pcgroup::is_prime(p) {
                        return Err(perr(line_no, rest_col + 1, format!("{p} is not prime")));
                    }
                    prime = Some(p);
                }
                "gens" => {
                    let names: Vec<String> = rest.split_whitespace().map(str::to_string).collect();
                    if names.is_empty() {
                        return Err(perr(line_no, rest_col, "no generators"));
                    }
                    if let Some(bad) = names.iter().find(|n| !is_ident(n)) {
                        return Err(perr(line_no, rest_col, format!("bad generator name '{bad}'")));
                    }
                    gens = Some(names);
                }
                "power" | "comm" => {
                    let names = need_gens(&gens)?;
                    let p = prime.ok_or_else(|| perr(line_no, indent + 1, "'prime' must come first"))?;
                    let (lhs, rhs) = rest
                        .split_once('=')
                        .ok_or_else(|| perr(line_no, rest_col, "expected '='"))?;
                    let rhs_col = rest_col + lhs.chars().count() + 1;
                    let idx: Vec<usize> = lhs
                        .split_whitespace()
                        .map(|n| {
                            names
                                .iter()
                                .position(|x| x == n)
                                .ok_or_else(|| perr(line_no, rest_col, format!("unknown generator '{n}'")))
                        })
                        .collect::<Result<_>>()?;
                    let expr = parse_element_expr(rhs, &names).map_err(|e| relocate(e, line_no, rhs_col))?;
                    let rhs_el = normal_form(&expr, names.len(), p)
                        .map_err(|m| perr(line_no, rhs_col + 1, m))?;
                    match (key, idx.as_slice()) {
                        ("power", [i]) => {
                            if rhs_el.depth().is_some_and(|d| d <= *i) {
                                return Err(perr(line_no, rhs_col + 1, "power relation must use later generators"));
                            }
                            powers.push((*i, rhs_el));
                        }
                        ("comm", [j, i]) => {
                            if j <= i {
                                return Err(perr(line_no, rest_col, "write commutators as 'comm later earlier'"));
                            }
                            if rhs_el.depth().is_some_and(|d| d <= *j) {
                                return Err(perr(line_no, rhs_col + 1, "commutator relation must use later generators"));
                            }
                            comms.push((*j, *i, rhs_el));
                        }
                        _ => return Err(perr(line_no, rest_col, "wrong number of generators on the left")),
                    }
                }
                "subset" => {
                    let names = need_gens(&gens)?;
                    subset = Some(SubsetSpec::parse(rest, &names).map_err(|e| relocate(e, line_no, rest_col))?);
                }
                "law" => law = Some(Law::parse(rest).map_err(|e| relocate(e, line_no, rest_col))?),
                "word" => word = Some(Word::parse(rest).map_err(|e| relocate(e, line_no, rest_col))?),
                other => return Err(perr(line_no, indent + 1, format!("unknown directive '{other}'"))),
            }
        }
        let prime = prime.ok_or_else(|| perr(1, 1, "missing 'prime'"))?;
        let gens = gens.ok_or_else(|| perr(1, 1, "missing 'gens'"))?;
        let mut inst = InstanceFile { name, prime, gens, powers, comms, subset, law, word };
        inst.normalize();
        Ok(inst)
    }

    /// Drop trivial relations, keep the last of repeated ones, sort.
    fn normalize(&mut self) {
        let mut powers: std::collections::BTreeMap<usize, Element> = Default::default();
        for (i, r) in self.powers.drain(..) {
            powers.insert(i, r);
        }
        self.powers = powers.into_iter().filter(|(_, r)| !r.is_identity()).collect();
        let mut comms: std::collections::BTreeMap<(usize, usize), Element> = Default::default();
        for (j, i, r) in self.comms.drain(..) {
            comms.insert((j, i), r);
        }
        self.comms = comms.into_iter().filter(|(_, r)| !r.is_identity()).map(|((j, i), r)| (j, i, r)).collect();
    }

    pub fn presentation(&self) -> Result<PcPresentation> {
        let mut p = PcPresentation::new(self.prime, self.gens.clone())?;
        for (i, r) in &self.powers {
            p.set_power(*i, r.clone())?;
        }
        for (j, i, r) in &self.comms {
            p.set_commutator(*j, *i, r.clone())?;
        }
        Ok(p)
    }

    /// Consistent group; inconsistency is an error.
    pub fn group(&self) -> Result<PcGroup> {
        PcGroup::new(self.presentation()?)
    }

    /// Normalized text; `parse(emit(x)) == x`.
    pub fn emit(&self) -> String {
        let mut s = String::new();
        if let Some(n) = &self.name {
            let _ = writeln!(s, "name {n}");
        }
        let _ = writeln!(s, "prime {}", self.prime);
        let _ = writeln!(s, "gens {}", self.gens.join(" "));
        for (i, r) in &self.powers {
            let _ = writeln!(s, "power {} = {}", self.gens[*i], emit_normal(r, &self.gens));
        }
        for (j, i, r) in &self.comms {
            let _ = writeln!(s, "comm {} {} = {}", self.gens[*j], self.gens[*i], emit_normal(r, &self.gens));
        }
        if let Some(sub) = &self.subset {
            let _ = writeln!(s, "subset {}", sub.emit(&self.gens));
        }
        if let Some(l) = &self.law {
            let _ = writeln!(s, "law {l}");
        }
        if let Some(w) = &self.word {
            let _ = writeln!(s, "word {w}");
        }
        s
    }
}

/// Relation right-hand sides must already be in normal form.
fn normal_form(expr: &ElementExpr, n: usize, p: u32) -> std::result::Result<Element, String> {
    let mut v = vec![0u32; n];
    let mut last: Option<usize> = None;
    for &(g, e) in expr {
        if last.is_some_and(|l| l >= g) {
            return Err("right-hand side must list generators in increasing order".into());
        }
        if e < 1 || e >= p as i64 {
            return Err(format!("exponents on the right-hand side must lie in 1..{}", p - 1));
        }
        v[g] = e as u32;
        last = Some(g);
    }
    Ok(Element(v))
}

#[cfg(test)]
mod tests {
    use super::*;

    const HEIS: &str = "name heis3\nprime 3\ngens a b c\ncomm b a = c\nsubset conj-closure a, b\n";

    #[test]
    fn heis_roundtrip_and_order() {
        let inst = InstanceFile::parse(HEIS).unwrap();
        assert_eq!(inst.group().unwrap().order_u64(), Some(27));
        assert_eq!(InstanceFile::parse(&inst.emit()).unwrap(), inst);
        assert_eq!(inst.emit(), HEIS);
    }

    #[test]
    fn index_violation_rejected() {
        let err = InstanceFile::parse("prime 3\ngens a b c\ncomm b a = a\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }), "{err:?}");
    }

    #[test]
    fn single_generator_is_cyclic() {
        let inst = InstanceFile::parse("prime 5\ngens a\n").unwrap();
        assert_eq!(inst.group().unwrap().order_u64(), Some(5));
    }

    #[test]
    fn positioned_errors() {
        match InstanceFile::parse("prime 3\ngens a b\nsubset a, z\n") {
            Err(Error::Parse { line, column, .. }) => assert_eq!((line, column), (3, 11)),
            other => panic!("unexpected {other:?}"),
        }
        match InstanceFile::parse("prime 3\ngens a b\nlaw x1 q\n") {
            Err(Error::Parse { line, column, .. }) => assert_eq!((line, column), (3, 8)),
            other => panic!("unexpected {other:?}"),
        }
    }
}
