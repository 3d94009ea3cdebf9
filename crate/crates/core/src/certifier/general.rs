use std::collections::BTreeSet;

use num_traits::ToPrimitive;
use serde_json::{json, Value};

use crate::certifier::record::{el_json, els_json, poly_json, section_json, subgroup_json};
use crate::certifier::{guard, lemmas, CertifyOptions, Certificate, CheckVerdict, Step, Stop};
use crate::exactpoly::{
    engel_exponent, p_part, power_annihilator, product_annihilator, semple_search, SempleBounds, SempleOutcome,
    SempleWitness,
};
use crate::lawkit::{build_tk, check_law_on_subset, derive_annihilator_f, width, Law, PositiveLaw};
use crate::pcgroup::{oracle, Element, PcGroup, Quotient};
use crate::sections::{enumerate_abelian_normal_sections, AbelianSection, SectionCoverage};
use crate::IntPoly;

/// Full pipeline for a powerful `G` generated by a normal subset `T` that
/// satisfies a positive law (and optionally a law `v == 1` on `G`).
pub fn certify_general(
    instance: &str,
    g: &PcGroup,
    t: &[Element],
    law: &PositiveLaw,
    v: Option<&Law>,
    opts: &CertifyOptions,
) -> Certificate {
    let mut cert = Certificate::new(instance);
    let _ = run(&mut cert, g, t, law, v, opts);
    cert
}

fn run(
    cert: &mut Certificate,
    g: &PcGroup,
    t: &[Element],
    law: &PositiveLaw,
    v: Option<&Law>,
    opts: &CertifyOptions,
) -> Step {
    let budget = &opts.budget;
    let p = g.prime();
    cert.set("prime", json!(p));
    cert.set("order_log", json!(g.ngens()));
    cert.flag("p2_variant", json!(p == 2));
    if opts.oracle {
        oracle_checks(cert, g, budget.enumeration)?;
    }
    let whole = g.whole();

    // hypothesis: G powerful
    let claim = if p == 2 { "G' <= G^4" } else { "G' <= G^p" };
    let powerful = guard(cert, "is_powerful", claim, g.is_powerful(&whole, budget.enumeration))?;
    let power_k = if p == 2 { 4 } else { p as u64 };
    let pw = guard(cert, "is_powerful", claim, g.power_subgroup(&whole, power_k, budget.enumeration))?;
    let detail = json!({ "derived": subgroup_json(g, &g.derived_subgroup(&whole)), "power": subgroup_json(g, &pw) });
    if !cert.pass_if(powerful, "is_powerful", claim, json!({ "subgroup": subgroup_json(g, &whole) }), detail) {
        return Err(Stop);
    }

    // hypothesis: T normal, generating, of width m
    let t: Vec<Element> = t.iter().cloned().collect::<BTreeSet<_>>().into_iter().collect();
    let inputs = json!({ "subset": els_json(g, &t) });
    if !cert.pass_if(g.is_normal_subset(&t), "subset_normal", "T^g = T for all g in G", inputs.clone(), Value::Null) {
        return Err(Stop);
    }
    let generated = g.closure(&t);
    let ok = generated == whole;
    let detail = json!({ "generated_order_log": generated.rank_log() });
    if !cert.pass_if(ok, "subset_generates", "<T> = G", inputs.clone(), detail) {
        return Err(Stop);
    }
    let bfs = guard(cert, "width", "every element of G is a product of at most m elements of T ∪ T^-1", width(g, &t, budget))?;
    let m = bfs.m;
    cert.pass_if(
        true,
        "width",
        "every element of G is a product of at most m elements of T ∪ T^-1",
        inputs.clone(),
        json!({ "m": m, "layer_sizes": bfs.layer_sizes }),
    );
    let gens = guard(
        cert,
        "burnside_basis",
        "a minimal generating set can be chosen from T",
        g.burnside_generators(&whole, Some(&t), budget.enumeration),
    )?;
    let d = gens.len();
    cert.set("m", json!(m));
    cert.set("d", json!(d));
    cert.set("burnside_generators", els_json(g, &gens));

    // hypothesis: the positive law holds on T
    let lc = check_law_on_subset(g, &t, &law.to_law(), budget);
    cert.flag("law_on_subset", json!(if lc.coverage.is_exhaustive() { "proved" } else { "sampled" }));
    let detail = match &lc.counterexample {
        Some(ce) => json!({ "counterexample": els_json(g, ce), "coverage": lc.coverage }),
        None => json!({ "coverage": lc.coverage }),
    };
    let inputs = json!({ "subset": els_json(g, &t), "law": law.to_string() });
    if !cert.pass_if(lc.holds(), "law_on_subset", "alpha(t_1, ...) = beta(t_1, ...) for all t_i in T", inputs, detail) {
        return Err(Stop);
    }
    cert.set("n", json!(law.degree()));

    if let Some(v) = v {
        law_on_group(cert, g, v, opts)?;
    }

    // annihilator f for elements of T on abelian normal sections
    let derived = guard(cert, "annihilator_f", "f is monic of degree at most 2n", derive_annihilator_f(law))?;
    let f = opts.annihilator.clone().unwrap_or_else(|| derived.f.clone());
    cert.flag("annihilator_source", json!(if opts.annihilator.is_some() { "supplied" } else { "derived" }));
    let deg_f = f.degree().unwrap_or(0);
    let ok = f.is_monic() && deg_f <= 2 * law.degree();
    cert.set("f", poly_json(&f));
    cert.pass_if(
        ok,
        "annihilator_f",
        "f is monic of degree at most 2n",
        json!({ "law": law.to_string() }),
        json!({ "f": poly_json(&f), "f_plus": poly_json(&derived.f_plus), "f_minus": poly_json(&derived.f_minus), "degree": deg_f }),
    );
    if !ok {
        return Err(Stop);
    }
    let (sections, coverage) = guard(
        cert,
        "section_annihilation",
        "f(t) = 0 on every abelian normal section, for t in T ∪ T^-1",
        enumerate_abelian_normal_sections(g, budget, opts.sections),
    )?;
    cert.flag(
        "section_coverage",
        json!(match coverage {
            SectionCoverage::Full => "full",
            SectionCoverage::StandardFamily => "standard-family",
        }),
    );
    let mut failure = Value::Null;
    for s in &sections {
        if let Err(w) = s.verify_annihilation(g, &f, &t) {
            failure = json!({
                "section": section_json(g, s.k(), s.l()),
                "t": el_json(g, &w.g),
                "a": el_json(g, &w.a),
            });
            break;
        }
    }
    let ok = failure.is_null();
    let detail = if ok { json!({ "sections": sections.len() }) } else { failure };
    if !cert.pass_if(
        ok,
        "section_annihilation",
        "f(t) = 0 on every abelian normal section, for t in T ∪ T^-1",
        json!({ "f": poly_json(&f), "subset": els_json(g, &t) }),
        detail,
    ) {
        return Err(Stop);
    }

    let s_len = g.derived_length(&whole);
    cert.set("derived_length", json!(s_len));

    let mut k = 1;
    loop {
        let gk1 = g.gamma(&whole, k + 1);
        level(cert, g, &t, m, d, &f, k, opts)?;
        if g.derived_subgroup(&gk1).is_trivial() {
            break;
        }
        k += 1;
    }
    cert.set("levels", json!(k));
    cert.set("observed_class", json!(g.nilpotency_class(&whole)));
    Ok(())
}

pub(crate) fn law_on_group(cert: &mut Certificate, g: &PcGroup, v: &Law, opts: &CertifyOptions) -> Step {
    if g.order_u64().is_none_or(|o| o > opts.budget.enumeration) {
        cert.record(
            "law_on_group",
            "v(g_1, ...) = 1 for all g_i in G",
            json!({ "law": v.to_string() }),
            CheckVerdict::Exhausted,
            json!({ "error": "group too large to enumerate" }),
        );
        return Err(Stop);
    }
    let all: Vec<Element> = g.elements().collect();
    let lc = check_law_on_subset(g, &all, v, &opts.budget);
    cert.flag("law_on_group", json!(if lc.coverage.is_exhaustive() { "proved" } else { "sampled" }));
    let detail = match &lc.counterexample {
        Some(ce) => json!({ "counterexample": els_json(g, ce), "coverage": lc.coverage }),
        None => json!({ "coverage": lc.coverage }),
    };
    if cert.pass_if(lc.holds(), "law_on_group", "v(g_1, ...) = 1 for all g_i in G", json!({ "law": v.to_string() }), detail) {
        Ok(())
    } else {
        Err(Stop)
    }
}

fn oracle_checks(cert: &mut Certificate, g: &PcGroup, limit: u64) -> Step {
    let order = match g.order_u64() {
        Some(o) if o.saturating_mul(o) <= limit.saturating_mul(16) => o as usize,
        _ => {
            cert.record(
                "oracle_products",
                "collection agrees with word rewriting on all pairs",
                Value::Null,
                CheckVerdict::Exhausted,
                json!({ "error": "group too large for pairwise comparison" }),
            );
            return Err(Stop);
        }
    };
    let mut bad = Value::Null;
    'outer: for a in 0..order {
        let x = g.element_at(a);
        for b in 0..order {
            let y = g.element_at(b);
            if g.collect_product(&x, &y) != oracle::rewrite_product(g.presentation(), &x, &y) {
                bad = json!({ "x": el_json(g, &x), "y": el_json(g, &y) });
                break 'outer;
            }
        }
    }
    let ok = bad.is_null();
    if !cert.pass_if(ok, "oracle_products", "collection agrees with word rewriting on all pairs", Value::Null, bad) {
        return Err(Stop);
    }
    let w = g.exhaustive_associativity();
    let detail = match &w {
        Some(w) => json!({ "x": el_json(g, &w.x), "y": el_json(g, &w.y), "z": el_json(g, &w.z) }),
        None => json!({ "triples": (order as u64).pow(3) }),
    };
    if cert.pass_if(w.is_none(), "associativity", "(xy)z = x(yz) for all x, y, z", Value::Null, detail) {
        Ok(())
    } else {
        Err(Stop)
    }
}

#[allow(clippy::too_many_arguments)]
fn level(
    cert: &mut Certificate,
    g: &PcGroup,
    t: &[Element],
    m: usize,
    d: usize,
    f: &IntPoly,
    k: usize,
    opts: &CertifyOptions,
) -> Step {
    let budget = &opts.budget;
    let p = g.prime();
    let whole = g.whole();
    let pre = format!("level{k}");
    let name = |s: &str| format!("{pre}/{s}");
    let gk = g.gamma(&whole, k);
    let a_k = g.gamma(&whole, k + 1);
    let l = g.derived_subgroup(&a_k);

    let tk = guard(cert, &name("tk_generates"), "T_k is normal and <T_k> = gamma_k(G)", build_tk(g, t, k))?;
    let ok = g.closure(&tk) == gk && g.is_normal_subset(&tk);
    let inputs = json!({ "k": k, "subset": els_json(g, t) });
    let detail = json!({ "tk_size": tk.len(), "gamma_k": subgroup_json(g, &gk) });
    if !cert.pass_if(ok, name("tk_generates"), "T_k is normal and <T_k> = gamma_k(G)", inputs.clone(), detail) {
        return Err(Stop);
    }
    let bfs = guard(cert, &name("tk_width"), "width(T_k) <= m d^(k-1)", width(g, &tk, budget))?;
    let bound = m as u64 * (d as u64).pow(k as u32 - 1);
    if !cert.pass_if(
        bfs.m as u64 <= bound,
        name("tk_width"),
        "width(T_k) <= m d^(k-1)",
        inputs,
        json!({ "width": bfs.m, "bound": bound }),
    ) {
        return Err(Stop);
    }
    let m_k = bfs.m;

    let mut bad = Value::Null;
    'pairs: for x in &tk {
        for y in &tk {
            if !a_k.contains(g, &g.commutator(x, y)) {
                bad = json!({ "x": el_json(g, x), "y": el_json(g, y) });
                break 'pairs;
            }
        }
    }
    if !cert.pass_if(
        bad.is_null(),
        name("tk_commute_mod_section"),
        "[x, y] in gamma_{k+1}(G) for all x, y in T_k",
        json!({ "k": k }),
        bad,
    ) {
        return Err(Stop);
    }

    let section = guard(
        cert,
        &name("section"),
        "gamma_{k+1}(G) / gamma_{k+1}(G)' is an abelian normal section",
        AbelianSection::new(g, &a_k, &l),
    )?;
    let sec_json = section_json(g, &a_k, &l);
    cert.set(name("section_invariants"), json!(section.moduli()));

    // annihilator of A for the elements of T_k
    let fk = if k == 1 {
        f.clone()
    } else {
        let h2 = guard(cert, &name("pair_annihilator"), "deg h <= (2n)^2", product_annihilator(f, 2))?;
        let n_law = cert.quantities.get("n").and_then(Value::as_u64).unwrap_or(0) as usize;
        let deg = h2.degree().unwrap_or(0);
        cert.pass_if(
            deg <= (2 * n_law).pow(2),
            name("pair_annihilator"),
            "h(X_1 X_2) lies in (f(X_1), f(X_2)) and deg h <= (2n)^2",
            json!({ "f": poly_json(f) }),
            json!({ "h": poly_json(&h2), "degree": deg }),
        );
        h2
    };
    let res = section.verify_annihilation(g, &fk, &tk);
    let detail = match &res {
        Ok(()) => Value::Null,
        Err(w) => json!({ "t": el_json(g, &w.g), "a": el_json(g, &w.a) }),
    };
    if !cert.pass_if(
        res.is_ok(),
        name("section_annihilation"),
        "f_k(t) = 0 on A for t in T_k ∪ T_k^-1",
        json!({ "section": sec_json.clone(), "f": poly_json(&fk), "subset": els_json(g, &tk) }),
        detail,
    ) {
        return Err(Stop);
    }
    cert.set(name("f_k"), poly_json(&fk));

    // annihilator of every element of gamma_k, when its degree is small
    let dk = fk.degree().unwrap_or(0);
    let h_deg = (dk as u64).checked_pow(m_k as u32);
    match h_deg {
        Some(hd) if hd as usize <= opts.product_degree_cap && m_k >= 1 => {
            let h = guard(cert, &name("product_annihilation"), "h(x) = 0 on A for all x in gamma_k(G)", product_annihilator(&fk, m_k))?;
            let elems = guard(cert, &name("product_annihilation"), "h(x) = 0 on A for all x in gamma_k(G)", gk.elements(g, budget.enumeration))?;
            let res = section.verify_annihilation(g, &h, &elems);
            let detail = match &res {
                Ok(()) => json!({ "h": poly_json(&h), "degree": hd }),
                Err(w) => json!({ "x": el_json(g, &w.g), "a": el_json(g, &w.a) }),
            };
            if !cert.pass_if(
                res.is_ok(),
                name("product_annihilation"),
                "h(x) = 0 on A for all x in gamma_k(G), where h(X_1 ... X_m) lies in (f_k(X_i))",
                json!({ "section": sec_json.clone(), "f": poly_json(&fk), "m": m_k }),
                detail,
            ) {
                return Err(Stop);
            }
            cert.flag(name("product_annihilator"), json!("computed"));
        }
        _ => {
            cert.flag(name("product_annihilator"), json!("per-generator"));
            cert.set(name("product_annihilator_degree"), json!(h_deg));
        }
    }

    let gens = guard(
        cert,
        &name("burnside_basis"),
        "a minimal generating set of gamma_k(G) can be chosen from T_k",
        g.burnside_generators(&gk, Some(&tk), budget.enumeration),
    )?;
    let d_k = gens.len();
    let c = section.action_class(g, &gk);
    let ee = guard(cert, &name("engel_exponent"), "(X-1)^r = gcd((X-1)^c, f_k) in F_p[X]", engel_exponent(&fk, c as u32, p as u64))?;
    let r1 = ee.r;
    for (i, x) in gens.iter().enumerate() {
        let res = section.engel_mod_p_check(g, x, r1);
        let detail = match &res {
            Ok(()) => Value::Null,
            Err(w) => json!({ "a": el_json(g, &w.a) }),
        };
        if !cert.pass_if(
            res.is_ok(),
            format!("{pre}/engel_mod_p[{i}]"),
            "[A, _r g] <= A^p",
            json!({ "section": sec_json.clone(), "g": el_json(g, x), "r": r1 }),
            detail,
        ) {
            return Err(Stop);
        }
    }

    // Semple parameters
    let found = semple(cert, &pre, &fk, opts.budget.semple)?;
    let (witness, restricted) = {
        let sound = |w: &SempleWitness| -> Option<(usize, usize)> {
            let idx: BTreeSet<usize> = w.certificate.generators.iter().copied().collect();
            for (gi, x) in gens.iter().enumerate() {
                for &i in &idx {
                    if !section.apply_poly(g, &fk, &g.pow(x, i as u64)).is_zero() {
                        return Some((gi, i));
                    }
                }
            }
            None
        };
        match sound(&found) {
            None => (found, false),
            Some(_) => {
                let narrow = SempleBounds { i_max: 1, ..opts.budget.semple };
                let w2 = semple(cert, &pre, &fk, narrow)?;
                (w2, true)
            }
        }
    };
    cert.flag(name("semple_ideal"), json!(if restricted { "h(X) only" } else { "h(X^i), i <= i_max" }));
    let idx: BTreeSet<usize> = witness.certificate.generators.iter().copied().collect();
    let mut bad = Value::Null;
    'gen: for x in &gens {
        for &i in &idx {
            let xi = g.pow(x, i as u64);
            if !section.apply_poly(g, &fk, &xi).is_zero() {
                bad = json!({ "g": el_json(g, x), "i": i });
                break 'gen;
            }
        }
    }
    if !cert.pass_if(
        bad.is_null(),
        name("semple_ideal_annihilates"),
        "h(g^i) = 0 on A for every substitution index i of the membership certificate",
        json!({ "section": sec_json.clone(), "h": poly_json(&fk), "indices": idx.iter().collect::<Vec<_>>() }),
        bad,
    ) {
        return Err(Stop);
    }

    let big_k = witness.k;
    let ell = witness.ell as u32;
    let q = witness.q.clone();
    let s = guard(cert, &name("p_part"), "p^s || q", p_part(&q, p as u64))?;
    let hk = guard(cert, &name("engel_exponent"), "(X-1)^r = gcd((X-1)^c, f_k) in F_p[X]", power_annihilator(&fk, big_k))?;
    let rk = guard(cert, &name("engel_exponent"), "(X-1)^r = gcd((X-1)^c, f_k) in F_p[X]", engel_exponent(&hk, c as u32, p as u64))?.r;
    let r = r1.max(rk);
    let n = s * r + ell;
    cert.set(
        name("parameters"),
        json!({
            "m": m_k, "d": d_k, "c": c, "r": r, "r_g": r1, "r_power": rk,
            "q": q.to_string(), "k": big_k, "ell": ell, "s": s, "n": n,
        }),
    );
    for (i, x) in gens.iter().enumerate() {
        let res = section.stratified_engel_check(g, x, s, r, ell, big_k as u64);
        let detail = match &res {
            Ok(n) => json!({ "n": n }),
            Err(fail) => json!({
                "step": fail.step, "level": fail.level,
                "g": el_json(g, &fail.witness.g), "a": el_json(g, &fail.witness.a),
            }),
        };
        if !cert.pass_if(
            res.is_ok(),
            format!("{pre}/stratified_engel[{i}]"),
            "[A^(p^i), _r g] <= A^(p^(i+1)) for i < s, [A^(p^s), _l g^k] = 1, hence [A, _n g^k] = 1 with n = s r + l",
            json!({ "section": sec_json.clone(), "g": el_json(g, x), "s": s, "r": r, "ell": ell, "k": big_k }),
            detail,
        ) {
            return Err(Stop);
        }
    }

    // |Q : Q^K A| <= K^d and the classes of <g_i^K, A>
    let powers: Vec<Element> = gens.iter().map(|x| g.pow(x, big_k as u64)).collect();
    let mut pgens = powers.clone();
    pgens.extend(a_k.basis().iter().cloned());
    let pk = g.closure(&pgens);
    let index = (p as u64).pow((gk.rank_log() - pk.rank_log()) as u32);
    let bound = (big_k as u64).checked_pow(d_k as u32).unwrap_or(u64::MAX);
    if !cert.pass_if(
        index <= bound,
        name("power_index"),
        "|Q : Q^k A| <= k^d",
        json!({ "k": big_k, "d": d_k }),
        json!({ "index": index, "bound": bound }),
    ) {
        return Err(Stop);
    }
    let quot = guard(cert, &name("quotient"), "gamma_{k+1}(G)' is normal", Quotient::new(g, &l))?;
    let qg = quot.group();
    let mut classes = Vec::new();
    for (i, x) in powers.iter().enumerate() {
        let mut hg = vec![x.clone()];
        hg.extend(a_k.basis().iter().cloned());
        let h = quot.project_subgroup(g, &g.closure(&hg));
        let cl = qg.nilpotency_class(&h);
        classes.push(cl);
        if !cert.pass_if(
            cl as u32 <= n.max(1),
            format!("{pre}/cyclic_extension_class[{i}]"),
            "class(<g^k, A>) <= n",
            json!({ "g": el_json(g, &gens[i]), "k": big_k, "n": n }),
            json!({ "class": cl }),
        ) {
            return Err(Stop);
        }
    }
    let qbar = quot.project_subgroup(g, &gk);
    let pbar = quot.project_subgroup(g, &pk);
    cert.set(name("class_of_power_product"), json!(qg.nilpotency_class(&pbar)));
    cert.set(name("class_of_Q"), json!(qg.nilpotency_class(&qbar)));

    // Q powerful: nilpotent-by-finite check with N = Q^K A
    let qgroup = guard(
        cert,
        &name("nbf"),
        "class(Q) <= k + c",
        qg.subgroup_as_group(&qbar, (1..=qbar.rank_log()).map(|i| format!("q{i}")).collect()),
    )?;
    let q_powerful = guard(cert, &name("nbf"), "class(Q) <= k + c", qgroup.is_powerful(&qgroup.whole(), budget.enumeration))?;
    if q_powerful {
        let to_q = |x: &Element| Element(qbar.coordinates(qg, x).expect("inside Q"));
        let nq = qgroup.closure(&pbar.basis().iter().map(to_q).collect::<Vec<_>>());
        let rec = guard(cert, &name("nbf"), "class(Q) <= k + c", lemmas::nbf_values(&qgroup, &nq, budget))?;
        if !cert.pass_if(
            rec.all_passed(),
            name("nbf"),
            "Q powerful, N = Q^k A of class c, e = exp(Q/N): [Q^(e^(c+1)), _c Q] = 1 and class(Q) <= k' + c",
            json!({ "k": big_k }),
            rec.to_json(),
        ) {
            return Err(Stop);
        }
    } else {
        cert.flag(name("nbf"), json!("Q not powerful"));
    }

    // Hall: N = Q inside G / gamma_{k+1}(G)'
    let hall = guard(cert, &name("hall"), "Hall data recorded", lemmas::hall_values(qg, &qbar))?;
    cert.set(name("hall"), json!({ "k": hall.k, "c": hall.c, "class": hall.class }));
    cert.set(name("observed_class"), json!(qg.nilpotency_class(&qg.whole())));
    Ok(())
}

fn semple(cert: &mut Certificate, pre: &str, h: &IntPoly, bounds: SempleBounds) -> Step<SempleWitness> {
    let name = format!("{pre}/semple_search");
    let claim = "q X^l (X^k - 1)^l lies in the ideal generated by h(X^i), i >= 1";
    let outcome = guard(cert, &name, claim, semple_search(h, bounds))?;
    match outcome {
        SempleOutcome::Found(w) => {
            let ok = w.certificate.verify();
            let inputs = json!({
                "h": poly_json(&w.certificate.h),
                "generators": w.certificate.generators,
                "cofactors": w.certificate.cofactors.iter().map(poly_json).collect::<Vec<_>>(),
                "target": poly_json(&w.certificate.target),
            });
            let detail = json!({
                "q": w.q.to_i64().map(Value::from).unwrap_or_else(|| json!(w.q.to_string())),
                "k": w.k, "ell": w.ell,
                "bounds": bounds,
            });
            if cert.pass_if(ok, format!("{pre}/semple_membership"), claim, inputs, detail) {
                Ok(w)
            } else {
                Err(Stop)
            }
        }
        SempleOutcome::Exhausted(b) => {
            cert.record(name, claim, json!({ "h": poly_json(h) }), CheckVerdict::Exhausted, json!({ "bounds": b }));
            Err(Stop)
        }
    }
}
