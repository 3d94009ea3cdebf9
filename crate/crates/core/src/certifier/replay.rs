use serde_json::Value;

use crate::certifier::record::poly_from_json;
use crate::certifier::{CertifyOptions, Certificate, CheckRecord, CheckVerdict};
use crate::exactpoly::MembershipCertificate;
use crate::instance::parse_element_expr;
use crate::lawkit::{check_law_on_subset, Law};
use crate::pcgroup::{Element, PcGroup, Subgroup};
use crate::sections::{enumerate_abelian_normal_sections, AbelianSection};

/// Result of re-running recorded checks from their recorded inputs.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ReplayOutcome {
    pub replayed: usize,
    /// Checks whose kind is not replayable from inputs alone.
    pub skipped: usize,
    /// Names of checks whose reproduced verdict differs.
    pub mismatches: Vec<String>,
}

impl ReplayOutcome {
    pub fn is_consistent(&self) -> bool {
        self.mismatches.is_empty()
    }
}

pub fn replay(cert: &Certificate, g: &PcGroup, opts: &CertifyOptions) -> ReplayOutcome {
    let mut out = ReplayOutcome::default();
    let verbal = cert
        .quantity("verbal_subgroup")
        .and_then(|v| elements(g, v))
        .and_then(|basis| {
            let h = g.closure(&basis);
            let names = (1..=h.rank_log()).map(|i| format!("h{i}")).collect();
            g.subgroup_as_group(&h, names).ok()
        });
    for c in &cert.checks {
        let (group, name) = match c.name.strip_prefix("w(G)/") {
            Some(rest) => match &verbal {
                Some(h) => (h, rest),
                None => {
                    out.skipped += 1;
                    continue;
                }
            },
            None => (g, c.name.as_str()),
        };
        match rerun(group, name, c, opts) {
            Some(v) => {
                out.replayed += 1;
                if v != c.verdict {
                    out.mismatches.push(c.name.clone());
                }
            }
            None => out.skipped += 1,
        }
    }
    out
}

fn element(g: &PcGroup, v: &Value) -> Option<Element> {
    let expr = parse_element_expr(v.as_str()?, g.names()).ok()?;
    Some(g.collect(&expr))
}

fn elements(g: &PcGroup, v: &Value) -> Option<Vec<Element>> {
    v.as_array()?.iter().map(|x| element(g, x)).collect()
}

fn subgroup(g: &PcGroup, v: &Value) -> Option<Subgroup> {
    Some(g.closure(&elements(g, v)?))
}

fn section(g: &PcGroup, v: &Value) -> Option<AbelianSection> {
    AbelianSection::new(g, &subgroup(g, &v["K"])?, &subgroup(g, &v["L"])?).ok()
}

fn verdict(ok: bool) -> CheckVerdict {
    if ok {
        CheckVerdict::Passed
    } else {
        CheckVerdict::Failed
    }
}

fn index_suffix(name: &str) -> &str {
    let base = name.rsplit('/').next().unwrap_or(name);
    base.split('[').next().unwrap_or(base)
}

fn rerun(g: &PcGroup, name: &str, c: &CheckRecord, opts: &CertifyOptions) -> Option<CheckVerdict> {
    let inp = &c.inputs;
    let budget = &opts.budget;
    // exhausted or errored records carry no inputs
    if inp.is_null() {
        return None;
    }
    match index_suffix(name) {
        "is_powerful" => {
            let h = subgroup(g, &inp["subgroup"])?;
            Some(verdict(g.is_powerful(&h, budget.enumeration).ok()?))
        }
        "subset_normal" => Some(verdict(g.is_normal_subset(&elements(g, &inp["subset"])?))),
        "subset_generates" => Some(verdict(g.closure(&elements(g, &inp["subset"])?) == g.whole())),
        "law_on_subset" => {
            let t = elements(g, &inp["subset"])?;
            let law = Law::parse(inp["law"].as_str()?).ok()?;
            Some(verdict(check_law_on_subset(g, &t, &law, budget).holds()))
        }
        "law_on_group" => {
            let law = Law::parse(inp["law"].as_str()?).ok()?;
            let all: Vec<Element> = g.elements().collect();
            Some(verdict(check_law_on_subset(g, &all, &law, budget).holds()))
        }
        "semple_membership" => {
            let cert = MembershipCertificate {
                h: poly_from_json(&inp["h"])?,
                generators: inp["generators"]
                    .as_array()?
                    .iter()
                    .map(|x| x.as_u64().map(|v| v as usize))
                    .collect::<Option<_>>()?,
                cofactors: inp["cofactors"].as_array()?.iter().map(poly_from_json).collect::<Option<_>>()?,
                target: poly_from_json(&inp["target"])?,
            };
            Some(verdict(cert.verify()))
        }
        "engel_mod_p" => {
            let s = section(g, &inp["section"])?;
            let x = element(g, &inp["g"])?;
            let r = inp["r"].as_u64()? as u32;
            Some(verdict(s.engel_mod_p_check(g, &x, r).is_ok()))
        }
        "stratified_engel" => {
            let s = section(g, &inp["section"])?;
            let x = element(g, &inp["g"])?;
            let get = |k: &str| inp[k].as_u64();
            let res = s.stratified_engel_check(
                g,
                &x,
                get("s")? as u32,
                get("r")? as u32,
                get("ell")? as u32,
                get("k")?,
            );
            Some(verdict(res.is_ok()))
        }
        "section_annihilation" => {
            let f = poly_from_json(&inp["f"])?;
            let t = elements(g, &inp["subset"])?;
            if inp.get("section").is_some() {
                let s = section(g, &inp["section"])?;
                Some(verdict(s.verify_annihilation(g, &f, &t).is_ok()))
            } else {
                let (all, _) = enumerate_abelian_normal_sections(g, budget, opts.sections).ok()?;
                Some(verdict(all.iter().all(|s| s.verify_annihilation(g, &f, &t).is_ok())))
            }
        }
        _ => None,
    }
}
