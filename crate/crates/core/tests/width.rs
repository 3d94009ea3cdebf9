use nilcert::budget::Budget;
use nilcert::catalog;
use nilcert::lawkit::{build_tk, express_gamma_k, width, word_values, Word};
use nilcert::pcgroup::{Element, PcGroup};

fn group(name: &str) -> PcGroup {
    catalog::load(name).unwrap().group().unwrap()
}

fn burnside_closure(g: &PcGroup) -> Vec<Element> {
    let gens = g.burnside_generators(&g.whole(), None, 1_000_000).unwrap();
    g.conjugation_closure(&gens)
}

#[test]
fn cyclic_width_from_one_generator() {
    let g = group("cyc9");
    let a = g.generator(0);
    assert_eq!(width(&g, &[a], &Budget::default()).unwrap().m, 4);
}

#[test]
fn tk_generates_gamma_k_within_width_bound() {
    let b = Budget::default();
    for name in ["mc9", "heis3", "mc27", "c3wrc3"] {
        let g = group(name);
        let t = burnside_closure(&g);
        let m = width(&g, &t, &b).unwrap().m as u64;
        let d = g.burnside_generators(&g.whole(), None, b.enumeration).unwrap().len() as u64;
        let class = g.nilpotency_class(&g.whole());
        for k in 1..=class {
            let tk = build_tk(&g, &t, k).unwrap();
            assert!(g.is_normal_subset(&tk), "{name} k={k}");
            assert_eq!(g.closure(&tk), g.gamma(&g.whole(), k), "{name} k={k}");
            let mk = width(&g, &tk, &b).unwrap().m as u64;
            assert!(mk <= m * d.pow(k as u32 - 1), "{name} k={k}: {mk} > {m} * {d}^{}", k - 1);
        }
    }
}

#[test]
fn gamma_k_factorizations_respect_bound() {
    let b = Budget::default();
    for name in ["mc9", "heis3", "c3wrc3"] {
        let g = group(name);
        let t = burnside_closure(&g);
        let class = g.nilpotency_class(&g.whole());
        for k in 1..=class {
            let tk = build_tk(&g, &t, k).unwrap();
            for y in g.gamma(&g.whole(), k).elements(&g, b.enumeration).unwrap() {
                let f = express_gamma_k(&g, &t, k, &y, &b).unwrap();
                assert_eq!(f.product(&g), y);
                assert!(f.factors.len() as u64 <= f.bound, "{name} k={k}");
                assert!(f.factors.iter().all(|s| tk.contains(&s.base)));
            }
        }
    }
}

#[test]
fn word_value_sets() {
    let b = Budget::default();
    let g = group("heis3");
    let comm = word_values(&g, &Word::parse("[x1, x2]").unwrap(), &b).unwrap();
    assert_eq!(comm.values.len(), 3);
    assert!(comm.coverage.is_exhaustive());
    let g = group("mc9");
    let cubes = word_values(&g, &Word::parse("x1^3").unwrap(), &b).unwrap();
    assert_eq!(g.closure(&cubes.values).order(&g), 9);
    assert_eq!(width(&g, &cubes.values, &b).unwrap().m, 1);
}
