use serde_json::{json, Value};

use crate::certifier::general::{certify_general, law_on_group};
use crate::certifier::record::{els_json, subgroup_json};
use crate::certifier::{guard, CertifyOptions, Certificate, Step, Stop};
use crate::lawkit::{check_law_on_subset, compose_law, verbal_subgroup, width, Law, PositiveLaw, Word};
use crate::pcgroup::{Element, PcGroup};

/// Verbal pipeline: `w(G)` powerful and the positive law on `G_w`, then the
/// general pipeline on `w(G)` with generating set `G_w`.
pub fn certify_verbal(instance: &str, g: &PcGroup, w: &Word, law: &PositiveLaw, opts: &CertifyOptions) -> Certificate {
    let mut cert = Certificate::new(instance);
    let _ = run(&mut cert, g, w, law, opts);
    cert
}

fn run(cert: &mut Certificate, g: &PcGroup, w: &Word, law: &PositiveLaw, opts: &CertifyOptions) -> Step {
    let budget = &opts.budget;
    cert.set("word", json!(w.to_string()));
    let claim = "G_w is the set of values of w";
    let (h, values) = guard(cert, "word_values", claim, verbal_subgroup(g, w, budget))?;
    cert.flag("word_values", json!(if values.coverage.is_exhaustive() { "proved" } else { "sampled" }));
    let gw = values.values;
    cert.set("G_w", els_json(g, &gw));
    cert.set("verbal_subgroup", subgroup_json(g, &h));
    cert.set("verbal_order_log", json!(h.rank_log()));
    cert.pass_if(true, "word_values", claim, json!({ "word": w.to_string() }), json!({ "size": gw.len(), "coverage": values.coverage }));

    let inputs = json!({ "subset": els_json(g, &gw) });
    if !cert.pass_if(g.is_normal_subset(&gw), "subset_normal", "G_w^g = G_w for all g in G", inputs.clone(), Value::Null) {
        return Err(Stop);
    }
    let claim = "every element of w(G) is a product of at most m values of w and their inverses";
    let bfs = guard(cert, "width", claim, width(g, &gw, budget))?;
    cert.set("m", json!(bfs.m));
    cert.pass_if(true, "width", claim, inputs.clone(), json!({ "m": bfs.m, "layer_sizes": bfs.layer_sizes }));

    let lc = check_law_on_subset(g, &gw, &law.to_law(), budget);
    cert.flag("law_on_subset", json!(if lc.coverage.is_exhaustive() { "proved" } else { "sampled" }));
    let detail = match &lc.counterexample {
        Some(ce) => json!({ "counterexample": els_json(g, ce), "coverage": lc.coverage }),
        None => json!({ "coverage": lc.coverage }),
    };
    let inputs = json!({ "subset": els_json(g, &gw), "law": law.to_string() });
    if !cert.pass_if(lc.holds(), "law_on_subset", "alpha(t_1, ...) = beta(t_1, ...) for all t_i in G_w", inputs, detail) {
        return Err(Stop);
    }

    let claim = if g.prime() == 2 { "w(G)' <= w(G)^4" } else { "w(G)' <= w(G)^p" };
    let powerful = guard(cert, "is_powerful", claim, g.is_powerful(&h, budget.enumeration))?;
    if !cert.pass_if(powerful, "is_powerful", claim, json!({ "subgroup": subgroup_json(g, &h) }), Value::Null) {
        return Err(Stop);
    }

    let v = guard(cert, "compose_law", "v = alpha(w, ...) beta(w, ...)^-1", compose_law(w, law))?;
    cert.set("v", json!(v.to_string()));
    let v = Law::trivial_value(v);
    law_on_group(cert, g, &v, opts)?;

    let names = (1..=h.rank_log()).map(|i| format!("h{i}")).collect();
    let hg = guard(cert, "subgroup_presentation", "w(G) has a consistent pc presentation", g.subgroup_as_group(&h, names))?;
    let t: Vec<Element> = gw
        .iter()
        .map(|x| Element(h.coordinates(g, x).expect("values lie in w(G)")))
        .collect();
    let sub = certify_general(&format!("{}/w(G)", cert.instance), &hg, &t, law, Some(&v), opts);
    cert.absorb("w(G)", sub);
    cert.set("observed_class", json!(g.nilpotency_class(&h)));
    if cert.is_passed() {
        Ok(())
    } else {
        Err(Stop)
    }
}
