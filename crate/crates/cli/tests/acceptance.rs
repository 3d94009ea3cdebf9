//! Acceptance criteria, one line per criterion. Exact arithmetic throughout.

use std::collections::BTreeSet;
use std::panic::{self, AssertUnwindSafe};
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use nilcert::budget::Budget;
use nilcert::catalog::{self, CATALOG};
use nilcert::certifier::{
    black_check, certify_general, certify_verbal, hall_check, nbf_powerful_check, CertifyOptions, CheckVerdict,
    Verdict,
};
use nilcert::exactpoly::{
    engel_exponent, product_annihilator, reduce_mod_powers, semple_search, semple_target, ModPoly, MultiPoly,
    SempleBounds, SempleOutcome,
};
use nilcert::instance::SubsetSpec;
use nilcert::lawkit::{build_tk, check_law_on_subset, width, Law, PositiveLaw, Word};
use nilcert::pcgroup::{oracle, Element, PcGroup};
use nilcert::IntPoly;
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn group(name: &str) -> PcGroup {
    catalog::load(name).unwrap().group().unwrap()
}

fn el(g: &PcGroup, name: &str) -> Element {
    g.generator(g.generator_index(name).unwrap())
}

fn subset(g: &PcGroup, spec: &str) -> Vec<Element> {
    SubsetSpec::parse(spec, g.names()).unwrap().resolve(g, &Budget::default()).unwrap()
}

fn class2_law() -> PositiveLaw {
    PositiveLaw::parse("x1 x2 x2 x1 = x2 x1 x1 x2").unwrap()
}

fn ensure(ok: bool, what: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what.into())
    }
}

fn criterion_1() -> Result<(), String> {
    for e in CATALOG {
        let g = group(e.name);
        let order = g.order_u64().unwrap();
        if order > 729 {
            continue;
        }
        let els: Vec<Element> = g.elements().collect();
        // table from the rewriting oracle
        let table: Vec<Vec<Element>> = els
            .iter()
            .map(|x| els.iter().map(|y| oracle::rewrite_product(g.presentation(), x, y)).collect())
            .collect();
        for (i, x) in els.iter().enumerate() {
            for (j, y) in els.iter().enumerate() {
                ensure(g.collect_product(x, y) == table[i][j], format!("{}: collect disagrees at {i},{j}", e.name))?;
            }
        }
        if order <= 10_000 {
            ensure(g.exhaustive_associativity().is_none(), format!("{}: associativity", e.name))?;
        }
    }
    Ok(())
}

fn criterion_2() -> Result<(), String> {
    let b = Budget::default();
    for name in ["cyc9", "ab_9_3", "mc9", "m16"] {
        let g = group(name);
        let w = g.whole();
        ensure(g.is_powerful(&w, b.enumeration).unwrap(), format!("{name} not powerful"))?;
        let p = g.prime() as u64;
        let mut i = 1u32;
        loop {
            let gamma = g.gamma(&w, i as usize + 1);
            let pw = g.power_subgroup(&w, p.pow(i), b.enumeration).unwrap();
            ensure(gamma.is_subgroup_of(&g, &pw), format!("{name}: gamma_{} not in G^(p^{i})", i + 1))?;
            if gamma.is_trivial() && pw.is_trivial() {
                break;
            }
            i += 1;
        }
    }
    Ok(())
}

fn criterion_3() -> Result<(), String> {
    let b = Budget::default();
    for name in ["mc9", "heis3"] {
        let g = group(name);
        let w = g.whole();
        let gens = g.burnside_generators(&w, None, b.enumeration).unwrap();
        let t = g.conjugation_closure(&gens);
        let d = gens.len() as u64;
        let m = width(&g, &t, &b).unwrap().m as u64;
        for k in 1..=g.nilpotency_class(&w) {
            let tk = build_tk(&g, &t, k).unwrap();
            ensure(g.closure(&tk) == g.gamma(&w, k), format!("{name}: <T_{k}> != gamma_{k}"))?;
            let mk = width(&g, &tk, &b).unwrap().m as u64;
            let bound = m * d.pow(k as u32 - 1);
            ensure(mk <= bound, format!("{name}: width(T_{k}) = {mk} > {bound}"))?;
        }
    }
    Ok(())
}

fn criterion_4() -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for case in 0..200 {
        let deg = rng.gen_range(1..=6usize);
        let m = if case % 2 == 0 { 2 } else { 3 };
        let mut cs: Vec<i64> = (0..deg).map(|_| rng.gen_range(-3..=3)).collect();
        cs.push(1);
        let f = IntPoly::from_i64s(&cs);
        let h = product_annihilator(&f, m).map_err(|e| e.to_string())?;
        ensure(h.degree() == Some(deg.pow(m as u32)), format!("case {case}: degree of h"))?;
        let lifted = MultiPoly::from_univariate_of_product(&h, m);
        ensure(reduce_mod_powers(&lifted, &f).unwrap().is_zero(), format!("case {case}: h not in ideal"))?;
        if m == 2 {
            let n = deg.div_ceil(2);
            ensure(deg * deg <= (2 * n) * (2 * n), format!("case {case}: (2n)^2 bound"))?;
        }
    }
    Ok(())
}

/// Multiplicity of the root 1 of `cs` over `F_p`, by synthetic division.
fn root_one_multiplicity(cs: &[i64], p: u64) -> Option<u32> {
    let mut c: Vec<u64> = cs.iter().map(|&x| x.rem_euclid(p as i64) as u64).collect();
    while c.last() == Some(&0) {
        c.pop();
    }
    if c.is_empty() {
        return None;
    }
    let mut r = 0;
    while c.iter().fold(0, |a, &x| (a + x) % p) == 0 {
        let mut q = vec![0u64; c.len() - 1];
        let mut carry = 0;
        for i in (1..c.len()).rev() {
            carry = (carry + c[i]) % p;
            q[i - 1] = carry;
        }
        c = q;
        r += 1;
    }
    Some(r)
}

fn criterion_5() -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let primes = [2u64, 3, 5, 7, 11];
    let mut done = 0;
    while done < 500 {
        let len = rng.gen_range(1..=8usize);
        let cs: Vec<i64> = (0..len).map(|_| rng.gen_range(-9..=9)).collect();
        let c = rng.gen_range(1..=8u32);
        let p = primes[rng.gen_range(0..primes.len())];
        let Some(mult) = root_one_multiplicity(&cs, p) else { continue };
        let h = IntPoly::from_i64s(&cs);
        let e = engel_exponent(&h, c, p).map_err(|e| e.to_string())?;
        ensure(e.r == mult.min(c), format!("r = {} for {cs:?} c={c} p={p}", e.r))?;
        let lhs = e.u.mul(&ModPoly::x_minus_one_pow(p, c)).add(&e.v.mul(&ModPoly::from_int(p, &h)));
        ensure(lhs == ModPoly::x_minus_one_pow(p, e.r), format!("Bezout for {cs:?} c={c} p={p}"))?;
        done += 1;
    }
    Ok(())
}

fn criterion_6() -> Result<(), String> {
    for cs in [vec![-1, 1], vec![0, 1], vec![-2, 1], vec![-1, 0, 1], vec![-1, -1, 1]] {
        let h = IntPoly::from_i64s(&cs);
        let SempleOutcome::Found(w) = semple_search(&h, SempleBounds::default()).map_err(|e| e.to_string())? else {
            return Err(format!("exhausted for {cs:?}"));
        };
        let target = semple_target(w.k, w.ell).scale(&w.q);
        ensure(w.q > BigInt::from(0), "q must be positive")?;
        ensure(w.certificate.target == target && w.certificate.expand() == target, format!("re-expansion for {cs:?}"))?;
    }
    Ok(())
}

fn criterion_7() -> Result<(), String> {
    let g = group("mc9");
    let t = subset(&g, "conj-closure a, b");
    let cert = certify_general("mc9", &g, &t, &class2_law(), None, &CertifyOptions::default());
    ensure(cert.verdict == Verdict::Passed, format!("verdict {:?}", cert.first_failure().map(|c| &c.name)))?;
    ensure(cert.checks.iter().all(|c| c.verdict == CheckVerdict::Passed), "a check did not pass")?;
    for name in [
        "law_on_subset",
        "width",
        "level1/tk_width",
        "level1/engel_mod_p[0]",
        "level1/engel_mod_p[1]",
        "level1/stratified_engel[0]",
        "level1/stratified_engel[1]",
    ] {
        ensure(cert.check(name).is_some(), format!("missing check {name}"))?;
    }
    let p = cert.quantity("level1/parameters").unwrap();
    let q = |k: &str| p[k].as_u64().unwrap();
    ensure(q("n") == q("s") * q("r") + q("ell"), "n != s r + l")?;
    ensure(cert.quantity("observed_class").and_then(|v| v.as_u64()) == Some(2), "observed class")?;

    let status = Command::new(env!("CARGO_BIN_EXE_nilcert"))
        .args(["certify-general", "catalog:mc9", "--subset", "conj-closure a,b", "--law", "x1 x2 x2 x1 = x2 x1 x1 x2"])
        .output()
        .map_err(|e| e.to_string())?;
    ensure(status.status.code() == Some(0), "cli exit code")
}

fn criterion_8() -> Result<(), String> {
    let opts = CertifyOptions::default();
    let g = group("heis3");
    let w = Word::parse("[x1, x2]").unwrap();
    let cert = certify_verbal("heis3", &g, &w, &PositiveLaw::parse("x1 x2 = x2 x1").unwrap(), &opts);
    ensure(cert.verdict == Verdict::Passed, format!("heis3: {:?}", cert.first_failure().map(|c| &c.name)))?;
    ensure(cert.quantity("verbal_order_log").and_then(|v| v.as_u64()) == Some(1), "heis3: |w(G)| != 3")?;
    ensure(cert.flags["law_on_group"] == "proved", "heis3: v not checked exhaustively")?;

    let g = group("mc9");
    let w = Word::parse("x1^3").unwrap();
    let cert = certify_verbal("mc9", &g, &w, &class2_law(), &opts);
    ensure(cert.verdict == Verdict::Passed, format!("mc9: {:?}", cert.first_failure().map(|c| &c.name)))?;
    ensure(cert.quantity("verbal_order_log").and_then(|v| v.as_u64()) == Some(2), "mc9: |w(G)| != 9")?;
    ensure(cert.quantity("observed_class").and_then(|v| v.as_u64()) == Some(1), "mc9: w(G) not abelian")?;
    ensure(cert.flags["law_on_group"] == "proved", "mc9: v not checked exhaustively")
}

fn criterion_9() -> Result<(), String> {
    let b = Budget::default();
    let g = group("mc9");
    let n = g.power_subgroup(&g.whole(), 3, b.enumeration).unwrap();
    let cert = nbf_powerful_check("mc9", &g, &n, &b);
    ensure(cert.verdict == Verdict::Passed, "nbf verdict")?;
    ensure(cert.check("long_commutator").map(|c| c.verdict) == Some(CheckVerdict::Passed), "long commutator")?;
    ensure(cert.check("class_bound").map(|c| c.verdict) == Some(CheckVerdict::Passed), "class bound")?;
    let q = |k: &str| cert.quantity(k).and_then(|v| v.as_u64());
    ensure(q("k") == Some(2) && q("c") == Some(1), format!("nbf (k, c) = ({:?}, {:?})", q("k"), q("c")))?;

    let g = group("heis3");
    let cert = black_check("heis3", &g, &Law::parse("x1^3").unwrap(), &b);
    ensure(cert.quantity("k").and_then(|v| v.as_u64()) == Some(2), "black k")?;

    let n = g.closure(&[el(&g, "c")]);
    let cert = hall_check("heis3", &g, &n);
    let q = |k: &str| cert.quantity(k).and_then(|v| v.as_u64());
    ensure(
        (q("k"), q("c"), q("observed_class")) == (Some(1), Some(2), Some(2)),
        "hall (k, c, class) != (1, 2, 2)",
    )
}

fn criterion_10() -> Result<(), String> {
    let opts = CertifyOptions::default();
    let g = group("heis3");
    let t = subset(&g, "conj-closure a, b");
    let cert = certify_general("heis3", &g, &t, &class2_law(), None, &opts);
    ensure(cert.first_failure().map(|c| c.name.as_str()) == Some("is_powerful"), "heis3 not stopped at is_powerful")?;
    ensure(cert.checks.len() == 1, "checks reported after is_powerful")?;

    let (a, b) = (el(&g, "a"), el(&g, "b"));
    let lc = check_law_on_subset(&g, &[a.clone(), b.clone()], &Law::parse("x1 x2 = x2 x1").unwrap(), &Budget::default());
    ensure(lc.counterexample == Some(vec![a, b]), "counterexample is not (a, b)")?;

    let g = group("mc9");
    let t = subset(&g, "conj-closure a, b");
    let bad = CertifyOptions { annihilator: Some(IntPoly::from_i64s(&[0, 1])), ..Default::default() };
    let cert = certify_general("mc9", &g, &t, &class2_law(), None, &bad);
    let fail = cert.first_failure().ok_or("adversarial f accepted")?;
    ensure(fail.name == "section_annihilation", format!("failed at {}", fail.name))?;
    ensure(fail.detail["a"].is_string() && fail.detail["t"].is_string(), "no witness")?;
    let names: BTreeSet<_> = cert.checks.iter().map(|c| c.name.as_str()).collect();
    ensure(!names.iter().any(|n| n.starts_with("level")), "checks reported after the failure")
}

fn main() -> ExitCode {
    type Criterion = (u32, &'static str, u64, fn() -> Result<(), String>);
    let criteria: [Criterion; 10] = [
        (1, "group engine matches oracle, associativity", 60, criterion_1),
        (2, "powerful structure", 10, criterion_2),
        (3, "T_k generation and width", 120, criterion_3),
        (4, "product annihilator algebra", 120, criterion_4),
        (5, "Bezout and Engel exponent", 10, criterion_5),
        (6, "membership certificates", 60, criterion_6),
        (7, "general pipeline on mc9", 300, criterion_7),
        (8, "verbal pipelines", 300, criterion_8),
        (9, "lemma checks", 60, criterion_9),
        (10, "negative controls", 10, criterion_10),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (n, title, limit, f) in criteria {
        let start = Instant::now();
        let res = panic::catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
        let took = start.elapsed();
        let res = res.and_then(|()| {
            ensure(took <= Duration::from_secs(limit), format!("took {:.1}s, limit {limit}s", took.as_secs_f64()))
        });
        match res {
            Ok(()) => println!("criterion {n:>2} PASS  {title} ({:.2}s)", took.as_secs_f64()),
            Err(why) => {
                failed += 1;
                println!("criterion {n:>2} FAIL  {title} ({:.2}s): {why}", took.as_secs_f64());
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
