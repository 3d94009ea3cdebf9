use serde::Serialize;
use serde_json::{json, Value};

use crate::budget::Budget;
use crate::certifier::record::{els_json, subgroup_json};
use crate::certifier::{guard, Certificate, CheckVerdict};
use crate::lawkit::{check_law_on_subset, Law};
use crate::pcgroup::{PcGroup, Quotient, Subgroup};
use crate::{Error, Result};

/// `k = class(N)`, `c = class(G/N')` and the observed class of `G`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HallRecord {
    pub k: usize,
    pub c: usize,
    pub class: usize,
}

pub fn hall_values(g: &PcGroup, n: &Subgroup) -> Result<HallRecord> {
    if !g.is_normal(n) {
        return Err(Error::Precondition("N is not normal in G".into()));
    }
    let k = g.nilpotency_class(n);
    let q = Quotient::new(g, &g.derived_subgroup(n))?;
    let c = q.group().nilpotency_class(&q.group().whole());
    Ok(HallRecord { k, c, class: g.nilpotency_class(&g.whole()) })
}

pub fn hall_check(instance: &str, g: &PcGroup, n: &Subgroup) -> Certificate {
    let mut cert = Certificate::new(instance);
    let inputs = json!({ "N": subgroup_json(g, n) });
    if !cert.pass_if(g.is_normal(n), "normal", "N is normal in G", inputs.clone(), Value::Null) {
        return cert;
    }
    if let Ok(rec) = guard(&mut cert, "hall", "G is nilpotent; class recorded with class(N) and class(G/N')", hall_values(g, n)) {
        cert.pass_if(
            true,
            "hall",
            "G is nilpotent; class recorded with class(N) and class(G/N')",
            inputs,
            json!(rec),
        );
        cert.set("k", json!(rec.k));
        cert.set("c", json!(rec.c));
        cert.set("observed_class", json!(rec.class));
    }
    cert
}

/// Data of the nilpotent-by-finite argument for a powerful `G` and `N`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NbfRecord {
    pub powerful: bool,
    pub normal: bool,
    /// class of `N`
    pub c: usize,
    /// exponent of `G/N`
    pub e: u64,
    /// `G^e <= N`
    pub power_in_n: bool,
    /// `gamma_{c+1}(G^e) = 1`
    pub gamma_power_trivial: bool,
    /// `[G^(e^(c+1)), G, ..., G] = 1` with `c` copies of `G`
    pub long_commutator: bool,
    /// least `k` with `gamma_{k+1}(G) <= G^(e^(c+1))`
    pub k: usize,
    pub class: usize,
    pub p2_variant: bool,
}

impl NbfRecord {
    pub fn class_bound_holds(&self) -> bool {
        self.class <= self.k + self.c
    }

    pub fn all_passed(&self) -> bool {
        self.powerful
            && self.normal
            && self.power_in_n
            && self.gamma_power_trivial
            && self.long_commutator
            && self.class_bound_holds()
    }

    pub fn to_json(&self) -> Value {
        json!(self)
    }
}

/// `G^j` for any `j >= 1`, trivial once `j` is a multiple of the exponent.
fn power_subgroup_big(g: &PcGroup, h: &Subgroup, j: Option<u64>, exp: u64, limit: u64) -> Result<Subgroup> {
    match j {
        Some(j) if j % exp != 0 => g.power_subgroup(h, j, limit),
        _ => Ok(Subgroup::trivial()),
    }
}

pub fn nbf_values(g: &PcGroup, n: &Subgroup, budget: &Budget) -> Result<NbfRecord> {
    let whole = g.whole();
    let limit = budget.enumeration;
    let powerful = g.is_powerful(&whole, limit)?;
    let normal = g.is_normal(n);
    if !normal {
        return Err(Error::Precondition("N is not normal in G".into()));
    }
    let c = g.nilpotency_class(n);
    let q = Quotient::new(g, n)?;
    let qg = q.group();
    let e = qg.exponent(&qg.whole(), limit)?;
    let exp = g.exponent(&whole, limit)?;
    let ge = power_subgroup_big(g, &whole, Some(e), exp, limit)?;
    let power_in_n = ge.is_subgroup_of(g, n);
    let gamma_power_trivial = g.gamma(&ge, c + 1).is_trivial();
    let big = power_subgroup_big(g, &whole, e.checked_pow(c as u32 + 1), exp, limit)?;
    let mut cur = big.clone();
    for _ in 0..c {
        cur = g.commutator_subgroup(&cur, &whole);
    }
    let long_commutator = cur.is_trivial();
    let mut k = 0;
    while !g.gamma(&whole, k + 1).is_subgroup_of(g, &big) {
        k += 1;
    }
    Ok(NbfRecord {
        powerful,
        normal,
        c,
        e,
        power_in_n,
        gamma_power_trivial,
        long_commutator,
        k,
        class: g.nilpotency_class(&whole),
        p2_variant: g.prime() == 2,
    })
}

pub fn nbf_powerful_check(instance: &str, g: &PcGroup, n: &Subgroup, budget: &Budget) -> Certificate {
    let mut cert = Certificate::new(instance);
    cert.flag("p2_variant", json!(g.prime() == 2));
    let inputs = json!({ "N": subgroup_json(g, n) });
    let claim = if g.prime() == 2 { "G' <= G^4" } else { "G' <= G^p" };
    let Ok(powerful) = guard(&mut cert, "is_powerful", claim, g.is_powerful(&g.whole(), budget.enumeration)) else {
        return cert;
    };
    if !cert.pass_if(powerful, "is_powerful", claim, json!({ "subgroup": subgroup_json(g, &g.whole()) }), Value::Null) {
        return cert;
    }
    if !cert.pass_if(g.is_normal(n), "normal", "N is normal in G", inputs.clone(), Value::Null) {
        return cert;
    }
    let Ok(rec) = guard(&mut cert, "nbf", "class(G) <= k + c", nbf_values(g, n, budget)) else {
        return cert;
    };
    cert.set("c", json!(rec.c));
    cert.set("e", json!(rec.e));
    cert.set("k", json!(rec.k));
    cert.set("observed_class", json!(rec.class));
    let detail = json!({ "c": rec.c, "e": rec.e });
    let steps = [
        (rec.power_in_n, "power_in_n", "G^e <= N"),
        (rec.gamma_power_trivial, "gamma_power", "gamma_{c+1}(G^e) = 1"),
        (rec.long_commutator, "long_commutator", "[G^(e^(c+1)), G, ..., G] = 1 with c copies of G"),
    ];
    for (ok, name, claim) in steps {
        if !cert.pass_if(ok, name, claim, inputs.clone(), detail.clone()) {
            return cert;
        }
    }
    cert.pass_if(
        rec.class_bound_holds(),
        "class_bound",
        "class(G) <= k + c, k least with gamma_{k+1}(G) <= G^(e^(c+1))",
        inputs,
        json!({ "k": rec.k, "c": rec.c, "class": rec.class }),
    );
    cert
}

/// Least `k` with `gamma_k((G^(k!))') = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlackRecord {
    pub k: usize,
    /// `v_p(k!)`, so that `G^(k!) = G^(p^v)`
    pub valuation: u32,
    pub power_subgroup_order_log: usize,
}

fn factorial_valuation(k: usize, p: u64) -> u32 {
    let mut v = 0;
    let mut q = k as u64;
    while q > 0 {
        q /= p;
        v += q as u32;
    }
    v
}

pub fn black_values(g: &PcGroup, budget: &Budget) -> Result<BlackRecord> {
    let whole = g.whole();
    let p = g.prime() as u64;
    let exp = g.exponent(&whole, budget.enumeration)?;
    for k in 1.. {
        let v = factorial_valuation(k, p);
        let j = p.checked_pow(v);
        let gk = power_subgroup_big(g, &whole, j, exp, budget.enumeration)?;
        let d = g.derived_subgroup(&gk);
        if g.gamma(&d, k).is_trivial() {
            return Ok(BlackRecord { k, valuation: v, power_subgroup_order_log: gk.rank_log() });
        }
    }
    unreachable!()
}

pub fn black_check(instance: &str, g: &PcGroup, v: &Law, budget: &Budget) -> Certificate {
    let mut cert = Certificate::new(instance);
    if g.order_u64().is_none_or(|o| o > budget.enumeration) {
        cert.record(
            "law_on_group",
            "v(g_1, ...) = 1 for all g_i in G",
            json!({ "law": v.to_string() }),
            CheckVerdict::Exhausted,
            json!({ "error": "group too large to enumerate" }),
        );
        return cert;
    }
    let all: Vec<_> = g.elements().collect();
    let lc = check_law_on_subset(g, &all, v, budget);
    cert.flag("law_on_group", json!(if lc.coverage.is_exhaustive() { "proved" } else { "sampled" }));
    let detail = match &lc.counterexample {
        Some(ce) => json!({ "counterexample": els_json(g, ce), "coverage": lc.coverage }),
        None => json!({ "coverage": lc.coverage }),
    };
    if !cert.pass_if(lc.holds(), "law_on_group", "v(g_1, ...) = 1 for all g_i in G", json!({ "law": v.to_string() }), detail) {
        return cert;
    }
    if let Ok(rec) = guard(&mut cert, "black", "gamma_k((G^(k!))') = 1", black_values(g, budget)) {
        cert.set("k", json!(rec.k));
        cert.pass_if(true, "black", "gamma_k((G^(k!))') = 1 for the least such k", json!({ "law": v.to_string() }), json!(rec));
    }
    cert
}
