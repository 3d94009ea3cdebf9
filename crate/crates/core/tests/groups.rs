use std::collections::BTreeSet;

use nilcert::catalog::{self, CATALOG};
use nilcert::pcgroup::{oracle, Element, PcGroup, Quotient, Subgroup};
use nilcert::sections::{enumerate_abelian_normal_sections, SectionMode};
use nilcert::{budget::Budget, IntPoly};
use proptest::prelude::*;

fn group(name: &str) -> PcGroup {
    catalog::load(name).unwrap().group().unwrap()
}

#[test]
fn collection_matches_rewriting_on_all_pairs() {
    for e in CATALOG {
        let g = group(e.name);
        let order = g.order_u64().unwrap() as usize;
        let els: Vec<Element> = g.elements().collect();
        for x in &els {
            for y in &els {
                let c = g.collect_product(x, y);
                assert_eq!(c, oracle::rewrite_product(g.presentation(), x, y), "{} {:?} {:?}", e.name, x, y);
                assert_eq!(c, g.mul(x, y));
            }
        }
        assert_eq!(els.iter().collect::<BTreeSet<_>>().len(), order);
    }
}

#[test]
fn catalog_is_associative() {
    for e in CATALOG {
        let g = group(e.name);
        assert!(g.exhaustive_associativity().is_none(), "{}", e.name);
    }
}

/// `a^i b^j` with `b^j a^k = a^(k r^j) b^j`, so `r` inverts the exponent of `a^b`.
fn metacyclic_check(name: &str, ma: i64, mb: i64, r: i64, a_weights: &[(usize, i64)], b_weights: &[(usize, i64)]) {
    let g = group(name);
    let mul = |(i, j): (i64, i64), (k, l): (i64, i64)| {
        let mut t = k;
        for _ in 0..j {
            t = t * r % ma;
        }
        ((i + t) % ma, (j + l) % mb)
    };
    // normal form as the ordered product of generator powers
    let phi = |x: &Element| {
        let mut acc = (0, 0);
        for (k, &e) in x.0.iter().enumerate() {
            let img = match (a_weights.iter().find(|w| w.0 == k), b_weights.iter().find(|w| w.0 == k)) {
                (Some(&(_, w)), _) => (w, 0),
                (_, Some(&(_, w))) => (0, w),
                _ => unreachable!(),
            };
            for _ in 0..e {
                acc = mul(acc, img);
            }
        }
        acc
    };
    let els: Vec<Element> = g.elements().collect();
    let images: BTreeSet<_> = els.iter().map(phi).collect();
    assert_eq!(images.len(), els.len());
    for x in &els {
        for y in &els {
            assert_eq!(phi(&g.mul(x, y)), mul(phi(x), phi(y)), "{name}");
        }
    }
}

#[test]
fn metacyclic_models() {
    metacyclic_check("mc9", 9, 9, 7, &[(0, 1), (2, 3)], &[(1, 1), (3, 3)]);
    metacyclic_check("mc27", 27, 9, 7, &[(0, 1), (2, 3), (4, 9)], &[(1, 1), (3, 3)]);
    metacyclic_check("m16", 8, 2, 5, &[(0, 1), (2, 2), (3, 4)], &[(1, 1)]);
    metacyclic_check("cyc9", 9, 1, 1, &[(0, 1), (1, 3)], &[]);
}

type M3 = [[u32; 3]; 3];

fn mm(a: &M3, b: &M3) -> M3 {
    let mut c = [[0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            c[i][j] = (0..3).map(|k| a[i][k] * b[k][j]).sum::<u32>() % 3;
        }
    }
    c
}

#[test]
fn heis3_matrix_model() {
    let g = group("heis3");
    let id: M3 = [[1, 0, 0], [0, 1, 0], [0, 0, 1]];
    let a: M3 = [[1, 1, 0], [0, 1, 0], [0, 0, 1]];
    let b: M3 = [[1, 0, 0], [0, 1, 1], [0, 0, 1]];
    let pw = |m: &M3, e: u32| (0..e).fold(id, |acc, _| mm(&acc, m));
    let inv = |m: &M3| pw(m, 2);
    // c = [b, a] = b^-1 a^-1 b a
    let c = mm(&mm(&mm(&inv(&b), &inv(&a)), &b), &a);
    let phi = |x: &Element| mm(&mm(&pw(&a, x.0[0]), &pw(&b, x.0[1])), &pw(&c, x.0[2]));
    let els: Vec<Element> = g.elements().collect();
    assert_eq!(els.iter().map(phi).collect::<BTreeSet<_>>().len(), 27);
    for x in &els {
        for y in &els {
            assert_eq!(phi(&g.mul(x, y)), mm(&phi(x), &phi(y)));
        }
    }
}

#[test]
fn known_invariants() {
    let b = Budget::default();
    let cases = [
        ("cyc9", 1, true, 9),
        ("ab_9_3", 1, true, 9),
        ("heis3", 2, false, 3),
        ("mc9", 2, true, 9),
        ("m16", 2, true, 8),
        ("c3wrc3", 3, false, 9),
        ("mc27", 3, true, 27),
        ("heis3x2", 2, false, 3),
    ];
    for (name, class, powerful, exp) in cases {
        let g = group(name);
        let w = g.whole();
        assert_eq!(g.nilpotency_class(&w), class, "{name}");
        assert_eq!(g.is_powerful(&w, b.enumeration).unwrap(), powerful, "{name}");
        assert_eq!(g.exponent(&w, b.enumeration).unwrap(), exp, "{name}");
    }
}

#[test]
fn powerful_lower_central_inside_powers() {
    let b = Budget::default();
    for name in ["cyc9", "ab_9_3", "mc9", "m16", "mc27"] {
        let g = group(name);
        let w = g.whole();
        let p = g.prime() as u64;
        let mut i = 1;
        loop {
            let gamma = g.gamma(&w, i + 1);
            let pw = g.power_subgroup(&w, p.pow(i as u32), b.enumeration).unwrap();
            assert!(gamma.is_subgroup_of(&g, &pw), "{name} i={i}");
            if gamma.is_trivial() && pw.is_trivial() {
                break;
            }
            i += 1;
        }
    }
}

#[test]
fn subgroup_elements_are_closed() {
    let g = group("mc27");
    let h = g.closure(&[g.generator(1), g.generator(2)]);
    let els = h.elements(&g, 1000).unwrap();
    assert_eq!(els.len() as u64, h.order(&g));
    let set: BTreeSet<_> = els.iter().cloned().collect();
    for x in &els {
        for y in &els {
            assert!(set.contains(&g.mul(x, y)));
        }
        assert_eq!(h.coordinates(&g, x).map(|c| h.element_from_coordinates(&g, &c)), Some(x.clone()));
    }
    let outside = g.elements().filter(|x| !set.contains(x)).count() as u64;
    assert_eq!(outside, g.order_u64().unwrap() - h.order(&g));
}

#[test]
fn normal_subgroups_match_brute_force() {
    for name in ["heis3", "mc9", "m16"] {
        let g = group(name);
        let els: Vec<Element> = g.elements().collect();
        let mut brute: BTreeSet<Vec<Element>> = BTreeSet::new();
        for x in &els {
            for y in &els {
                let h = g.closure(&[x.clone(), y.clone()]);
                if g.is_normal(&h) {
                    brute.insert(h.basis().to_vec());
                }
            }
        }
        let found: BTreeSet<Vec<Element>> =
            g.normal_subgroups(4096).unwrap().iter().map(|h| h.basis().to_vec()).collect();
        assert_eq!(found, brute, "{name}");
    }
}

#[test]
fn heis3_has_seven_normal_subgroups() {
    let g = group("heis3");
    assert_eq!(g.normal_subgroups(4096).unwrap().len(), 7);
}

#[test]
fn quotient_projection_is_a_homomorphism() {
    let g = group("mc27");
    let w = g.whole();
    for n in [g.gamma(&w, 2), g.gamma(&w, 3), g.derived_subgroup(&w), Subgroup::trivial(), w.clone()] {
        let q = Quotient::new(&g, &n).unwrap();
        let qg = q.group();
        assert_eq!(qg.order_u64().unwrap() * n.order(&g), g.order_u64().unwrap());
        for x in g.elements().step_by(7) {
            for y in g.elements().step_by(11) {
                assert_eq!(q.project(&g, &g.mul(&x, &y)), qg.mul(&q.project(&g, &x), &q.project(&g, &y)));
            }
            let back = q.lift(&g, &q.project(&g, &x));
            assert!(n.contains(&g, &g.mul(&g.inverse(&back), &x)));
        }
    }
    let not_normal = g.closure(&[g.generator(1)]);
    assert!(Quotient::new(&g, &not_normal).is_err());
}

/// `f(t) a` computed directly as `prod_i (a^(t^i))^(c_i)`.
fn brute_force_kills(g: &PcGroup, k: &Subgroup, l: &Subgroup, f: &IntPoly, t: &Element) -> bool {
    let cs: Vec<i64> = f.coeffs().iter().map(|c| i64::try_from(c.clone()).unwrap()).collect();
    k.elements(g, 10_000).unwrap().iter().all(|a| {
        let mut acc = g.identity();
        let mut ti = g.identity();
        for &c in &cs {
            acc = g.mul(&acc, &g.pow_signed(&g.conjugate(a, &ti), c));
            ti = g.mul(&ti, t);
        }
        l.contains(g, &acc)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn section_action_matches_brute_force(
        cs in prop::collection::vec(-4i64..=4, 1..=4),
        ti in 0usize..243,
        si in 0usize..64,
    ) {
        let g = group("mc27");
        let (secs, _) = enumerate_abelian_normal_sections(&g, &Budget::default(), SectionMode::Full).unwrap();
        let s = &secs[si % secs.len()];
        let t = g.element_at(ti);
        let f = IntPoly::from_i64s(&cs);
        let zero = s.apply_poly(&g, &f, &t).is_zero();
        prop_assert_eq!(zero, brute_force_kills(&g, s.k(), s.l(), &f, &t));
    }

    #[test]
    fn apply_poly_is_a_ring_homomorphism(
        a in prop::collection::vec(-3i64..=3, 1..=3),
        b in prop::collection::vec(-3i64..=3, 1..=3),
        ti in 0usize..81,
    ) {
        let g = group("mc9");
        let (secs, _) = enumerate_abelian_normal_sections(&g, &Budget::default(), SectionMode::Full).unwrap();
        let t = g.element_at(ti);
        let (fa, fb) = (IntPoly::from_i64s(&a), IntPoly::from_i64s(&b));
        for s in &secs {
            let (ea, eb) = (s.apply_poly(&g, &fa, &t), s.apply_poly(&g, &fb, &t));
            prop_assert_eq!(s.apply_poly(&g, &(&fa * &fb), &t), ea.then(&eb));
            prop_assert_eq!(s.apply_poly(&g, &(&fa + &fb), &t), ea.add(&eb));
        }
    }
}

#[test]
fn section_actions_compose() {
    let g = group("mc27");
    let (secs, _) = enumerate_abelian_normal_sections(&g, &Budget::default(), SectionMode::Full).unwrap();
    assert!(!secs.is_empty());
    for s in &secs {
        assert!(s.check_action_homomorphism(&g));
        assert_eq!(s.order(), s.k().order(&g) / s.l().order(&g));
    }
}
