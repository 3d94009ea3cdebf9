use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::budget::Budget;
use crate::lawkit::{Law, Word};
use crate::pcgroup::{Element, PcGroup, Subgroup};
use crate::{Error, Result};

/// How much of a substitution space was examined.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Coverage {
    /// Every tuple was tested.
    Exhaustive { tuples: u64 },
    /// Uniform random tuples; `space` is absent when it overflows.
    Sampled { samples: u64, space: Option<u64> },
}

impl Coverage {
    pub fn is_exhaustive(&self) -> bool {
        matches!(self, Coverage::Exhaustive { .. })
    }
}

/// Result of testing a law on a subset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LawCheck {
    pub counterexample: Option<Vec<Element>>,
    pub coverage: Coverage,
}

impl LawCheck {
    pub fn holds(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// Value of `w` at `args` (variable `i` replaced by `args[i]`).
pub fn evaluate_word(g: &PcGroup, w: &Word, args: &[Element]) -> Result<Element> {
    if args.len() != w.arity() {
        return Err(Error::Arity { expected: w.arity(), got: args.len() });
    }
    Ok(Evaluator::new(g, args).run(w))
}

struct Evaluator<'a> {
    g: &'a PcGroup,
    args: &'a [Element],
    inverses: Vec<Element>,
}

impl<'a> Evaluator<'a> {
    fn new(g: &'a PcGroup, args: &'a [Element]) -> Self {
        let inverses = args.iter().map(|a| g.inverse(a)).collect();
        Evaluator { g, args, inverses }
    }

    fn run(&self, w: &Word) -> Element {
        let mut acc = self.g.index_of(&self.g.identity());
        for &(v, e) in w.letters() {
            let x = if e == 1 { &self.args[v] } else { &self.inverses[v] };
            acc = self.g.mul_index(acc, x);
        }
        self.g.element_at(acc)
    }
}

/// `|T|^arity`, if it fits.
fn space_size(t: usize, arity: usize) -> Option<u64> {
    (t as u64).checked_pow(arity as u32)
}

/// Visit tuples from `t` (lexicographic, exhaustive) or a seeded sample;
/// stops early when `visit` returns `false`.
fn for_each_tuple(
    t: &[Element],
    arity: usize,
    budget: &Budget,
    mut visit: impl FnMut(&[Element]) -> bool,
) -> Coverage {
    let space = space_size(t.len(), arity);
    if t.is_empty() && arity > 0 {
        return Coverage::Exhaustive { tuples: 0 };
    }
    match space {
        Some(n) if n <= budget.substitutions => {
            let mut idx = vec![0usize; arity];
            let mut tuple: Vec<Element> = idx.iter().map(|&i| t[i].clone()).collect();
            let mut count = 0;
            loop {
                count += 1;
                if !visit(&tuple) {
                    return Coverage::Exhaustive { tuples: count };
                }
                let mut pos = arity;
                loop {
                    if pos == 0 {
                        return Coverage::Exhaustive { tuples: count };
                    }
                    pos -= 1;
                    idx[pos] += 1;
                    if idx[pos] < t.len() {
                        tuple[pos] = t[idx[pos]].clone();
                        break;
                    }
                    idx[pos] = 0;
                    tuple[pos] = t[0].clone();
                }
            }
        }
        _ => {
            let mut rng = ChaCha8Rng::seed_from_u64(0);
            let mut count = 0;
            while count < budget.samples {
                count += 1;
                let tuple: Vec<Element> = (0..arity).map(|_| t[rng.gen_range(0..t.len())].clone()).collect();
                if !visit(&tuple) {
                    break;
                }
            }
            Coverage::Sampled { samples: count, space }
        }
    }
}

/// Test `law` on every tuple from `t` (or on a seeded sample past the budget).
/// The counterexample is the first failing tuple in the visiting order.
pub fn check_law_on_subset(g: &PcGroup, t: &[Element], law: &Law, budget: &Budget) -> LawCheck {
    let mut counterexample = None;
    let coverage = for_each_tuple(t, law.arity(), budget, |tuple| {
        let ev = Evaluator::new(g, tuple);
        if ev.run(&law.lhs) != ev.run(&law.rhs) {
            counterexample = Some(tuple.to_vec());
            false
        } else {
            true
        }
    });
    LawCheck { counterexample, coverage }
}

/// The set `G_w` of values of `w`, sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WordValues {
    pub values: Vec<Element>,
    pub coverage: Coverage,
}

pub fn word_values(g: &PcGroup, w: &Word, budget: &Budget) -> Result<WordValues> {
    let all: Vec<Element> = match g.order_u64() {
        Some(o) if o <= budget.enumeration => g.elements().collect(),
        _ => {
            return Err(Error::Budget { what: "group enumeration".into(), budget: budget.enumeration })
        }
    };
    let mut values = BTreeSet::new();
    let coverage = for_each_tuple(&all, w.arity(), budget, |tuple| {
        values.insert(Evaluator::new(g, tuple).run(w));
        true
    });
    Ok(WordValues { values: values.into_iter().collect(), coverage })
}

/// `w(G) = < G_w >`, together with `G_w`.
pub fn verbal_subgroup(g: &PcGroup, w: &Word, budget: &Budget) -> Result<(Subgroup, WordValues)> {
    let values = word_values(g, w, budget)?;
    Ok((g.closure(&values.values), values))
}
