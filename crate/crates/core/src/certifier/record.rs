use std::collections::BTreeMap;

use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::pcgroup::{Element, PcGroup, Subgroup};
use crate::IntPoly;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CheckVerdict {
    #[serde(rename = "passed")]
    Passed,
    #[serde(rename = "failed")]
    Failed,
    #[serde(rename = "exhausted")]
    Exhausted,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    #[serde(rename = "passed")]
    Passed,
    #[serde(rename = "refuted hypothesis or bug")]
    Refuted,
    #[serde(rename = "exhausted")]
    Exhausted,
}

impl Verdict {
    /// Process exit status for this verdict.
    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Passed => 0,
            Verdict::Refuted => 1,
            Verdict::Exhausted => 2,
        }
    }
}

/// One verified claim.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub name: String,
    /// The mathematical statement being checked.
    pub claim: String,
    pub inputs: Value,
    pub verdict: CheckVerdict,
    /// Witness on failure, observed values on success.
    pub detail: Value,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub instance: String,
    pub checks: Vec<CheckRecord>,
    pub quantities: BTreeMap<String, Value>,
    pub verdict: Verdict,
    pub flags: BTreeMap<String, Value>,
}

impl Certificate {
    pub fn new(instance: impl Into<String>) -> Self {
        Certificate {
            instance: instance.into(),
            checks: Vec::new(),
            quantities: BTreeMap::new(),
            verdict: Verdict::Passed,
            flags: BTreeMap::new(),
        }
    }

    pub fn check(&self, name: &str) -> Option<&CheckRecord> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// First check that did not pass.
    pub fn first_failure(&self) -> Option<&CheckRecord> {
        self.checks.iter().find(|c| c.verdict != CheckVerdict::Passed)
    }

    pub fn quantity(&self, name: &str) -> Option<&Value> {
        self.quantities.get(name)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }

    /// Appends a check; the overall verdict degrades on failure or exhaustion.
    /// Returns whether the check passed.
    pub(crate) fn record(
        &mut self,
        name: impl Into<String>,
        claim: impl Into<String>,
        inputs: Value,
        verdict: CheckVerdict,
        detail: Value,
    ) -> bool {
        match verdict {
            CheckVerdict::Failed => self.verdict = Verdict::Refuted,
            CheckVerdict::Exhausted if self.verdict == Verdict::Passed => self.verdict = Verdict::Exhausted,
            _ => {}
        }
        self.checks.push(CheckRecord { name: name.into(), claim: claim.into(), inputs, verdict, detail });
        verdict == CheckVerdict::Passed
    }

    pub(crate) fn pass_if(
        &mut self,
        ok: bool,
        name: impl Into<String>,
        claim: impl Into<String>,
        inputs: Value,
        detail: Value,
    ) -> bool {
        let v = if ok { CheckVerdict::Passed } else { CheckVerdict::Failed };
        self.record(name, claim, inputs, v, detail)
    }

    pub(crate) fn set(&mut self, name: impl Into<String>, v: Value) {
        self.quantities.insert(name.into(), v);
    }

    pub(crate) fn flag(&mut self, name: impl Into<String>, v: Value) {
        self.flags.insert(name.into(), v);
    }

    pub fn is_passed(&self) -> bool {
        self.verdict == Verdict::Passed
    }

    /// Moves the checks of `sub` into `self` under `prefix/`.
    pub(crate) fn absorb(&mut self, prefix: &str, sub: Certificate) {
        for mut c in sub.checks {
            c.name = format!("{prefix}/{}", c.name);
            let v = c.verdict;
            self.record(c.name, c.claim, c.inputs, v, c.detail);
        }
        for (k, v) in sub.quantities {
            self.quantities.insert(format!("{prefix}/{k}"), v);
        }
        for (k, v) in sub.flags {
            self.flags.insert(format!("{prefix}/{k}"), v);
        }
    }
}

/// Coefficients, low degree first; integers outside `i64` become strings.
pub fn poly_json(p: &IntPoly) -> Value {
    Value::Array(
        p.coeffs()
            .iter()
            .map(|c| match c.to_i64() {
                Some(v) => json!(v),
                None => json!(c.to_string()),
            })
            .collect(),
    )
}

pub fn poly_from_json(v: &Value) -> Option<IntPoly> {
    let cs = v.as_array()?;
    let mut out = Vec::with_capacity(cs.len());
    for c in cs {
        let b = match c {
            Value::Number(n) => num_bigint::BigInt::from(n.as_i64()?),
            Value::String(s) => s.parse().ok()?,
            _ => return None,
        };
        out.push(b);
    }
    Some(IntPoly::new(out))
}

pub fn el_json(g: &PcGroup, x: &Element) -> Value {
    json!(g.format(x))
}

pub fn els_json(g: &PcGroup, xs: &[Element]) -> Value {
    Value::Array(xs.iter().map(|x| el_json(g, x)).collect())
}

pub fn subgroup_json(g: &PcGroup, h: &Subgroup) -> Value {
    els_json(g, h.basis())
}

/// Section reference `{ "K": [...], "L": [...] }` by canonical bases.
pub fn section_json(g: &PcGroup, k: &Subgroup, l: &Subgroup) -> Value {
    json!({ "K": subgroup_json(g, k), "L": subgroup_json(g, l) })
}
