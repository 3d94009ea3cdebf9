use nilcert::exactpoly::{
    engel_exponent, gcd_bezout, p_part, power_annihilator, product_annihilator, reduce_mod_powers, semple_search,
    semple_target, ModPoly, MultiPoly, SempleBounds, SempleOutcome,
};
use nilcert::IntPoly;
use num_bigint::BigInt;
use proptest::prelude::*;

fn poly(cs: &[i64]) -> IntPoly {
    IntPoly::from_i64s(cs)
}

/// `prod (X - r)` over the given roots.
fn from_roots(roots: &[i64]) -> IntPoly {
    roots.iter().fold(poly(&[1]), |acc, &r| &acc * &poly(&[-r, 1]))
}

fn monic(mut cs: Vec<i64>) -> IntPoly {
    cs.push(1);
    poly(&cs)
}

/// `F_p` multiplicity of the root 1 by synthetic division, on raw residues.
fn root_one_multiplicity(cs: &[i64], p: u64) -> Option<u32> {
    let mut c: Vec<u64> = cs.iter().map(|&x| x.rem_euclid(p as i64) as u64).collect();
    while c.last() == Some(&0) {
        c.pop();
    }
    if c.is_empty() {
        return None;
    }
    let mut r = 0;
    loop {
        // value at 1
        if c.iter().fold(0, |a, &x| (a + x) % p) != 0 {
            return Some(r);
        }
        let n = c.len();
        let mut q = vec![0u64; n - 1];
        let mut carry = 0;
        for i in (1..n).rev() {
            carry = (carry + c[i]) % p;
            q[i - 1] = carry;
        }
        c = q;
        r += 1;
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn product_annihilator_matches_root_products(roots in prop::collection::vec(-3i64..=3, 1..=4)) {
        let f = from_roots(&roots);
        let h = product_annihilator(&f, 2).unwrap();
        let mut prods = Vec::new();
        for &a in &roots {
            for &b in &roots {
                prods.push(a * b);
            }
        }
        prop_assert_eq!(h, from_roots(&prods));
    }

    #[test]
    fn power_annihilator_matches_root_powers(roots in prop::collection::vec(-3i64..=3, 1..=5), k in 1usize..=3) {
        let f = from_roots(&roots);
        let pw: Vec<i64> = roots.iter().map(|r| r.pow(k as u32)).collect();
        prop_assert_eq!(power_annihilator(&f, k).unwrap(), from_roots(&pw));
    }

    #[test]
    fn product_annihilator_lies_in_ideal(cs in prop::collection::vec(-4i64..=4, 1..=5), m in 2usize..=3) {
        let f = monic(cs);
        let d = f.degree().unwrap();
        prop_assume!(d.pow(m as u32) <= 125);
        let h = product_annihilator(&f, m).unwrap();
        prop_assert!(h.is_monic());
        prop_assert_eq!(h.degree().unwrap(), d.pow(m as u32));
        let lifted = MultiPoly::from_univariate_of_product(&h, m);
        prop_assert!(reduce_mod_powers(&lifted, &f).unwrap().is_zero());
    }

    #[test]
    fn reduction_is_idempotent_and_additive(
        cs in prop::collection::vec(-3i64..=3, 1..=3),
        a in prop::collection::vec((0u32..6, 0u32..6, -5i64..=5), 0..8),
        b in prop::collection::vec((0u32..6, 0u32..6, -5i64..=5), 0..8),
    ) {
        let f = monic(cs);
        let mk = |ts: &[(u32, u32, i64)]| MultiPoly::from_terms(2, ts.iter().map(|&(x, y, c)| (vec![x, y], BigInt::from(c))));
        let (pa, pb) = (mk(&a), mk(&b));
        let ra = reduce_mod_powers(&pa, &f).unwrap();
        prop_assert_eq!(reduce_mod_powers(&ra, &f).unwrap(), ra.clone());
        let rb = reduce_mod_powers(&pb, &f).unwrap();
        prop_assert_eq!(reduce_mod_powers(&pa.add(&pb), &f).unwrap(), ra.add(&rb));
        prop_assert!(ra.max_exponent() < f.degree().unwrap() as u32);
    }

    #[test]
    fn engel_exponent_bezout_identity(
        cs in prop::collection::vec(-6i64..=6, 1..=7),
        c in 1u32..=6,
        p in prop::sample::select(vec![2u64, 3, 5, 7]),
    ) {
        let h = poly(&cs);
        let Some(mult) = root_one_multiplicity(&cs, p) else { return Ok(()); };
        let e = engel_exponent(&h, c, p).unwrap();
        prop_assert_eq!(e.r, mult.min(c));
        let lhs = e.u.mul(&ModPoly::x_minus_one_pow(p, c)).add(&e.v.mul(&ModPoly::from_int(p, &h)));
        prop_assert_eq!(lhs, ModPoly::x_minus_one_pow(p, e.r));
    }

    #[test]
    fn gcd_bezout_identity(
        a in prop::collection::vec(0u64..5, 1..=6),
        b in prop::collection::vec(0u64..5, 1..=6),
    ) {
        let (a, b) = (ModPoly::new(5, a), ModPoly::new(5, b));
        prop_assume!(!(a.is_zero() && b.is_zero()));
        let (g, u, v) = gcd_bezout(&a, &b).unwrap();
        prop_assert_eq!(u.mul(&a).add(&v.mul(&b)), g.clone());
        prop_assert!(a.div_rem(&g).unwrap().1.is_zero());
        prop_assert!(b.div_rem(&g).unwrap().1.is_zero());
    }
}

#[test]
fn product_annihilator_bound_for_pairs() {
    // degree of a law-derived f is at most 2n, so pairs give at most (2n)^2
    for n in 1..=3 {
        let f = from_roots(&vec![1; 2 * n]);
        assert_eq!(product_annihilator(&f, 2).unwrap().degree().unwrap(), (2 * n) * (2 * n));
    }
}

#[test]
fn semple_certificates_reexpand() {
    for cs in [vec![-1, 1], vec![0, 1], vec![-2, 1], vec![-1, 0, 1], vec![-1, -1, 1]] {
        let h = poly(&cs);
        let SempleOutcome::Found(w) = semple_search(&h, SempleBounds::default()).unwrap() else {
            panic!("exhausted for {cs:?}");
        };
        let target = semple_target(w.k, w.ell).scale(&w.q);
        assert_eq!(w.certificate.target, target);
        assert_eq!(w.certificate.expand(), target);
        assert!(w.certificate.verify());
    }
}

#[test]
fn semple_x_minus_two_is_least_triple() {
    let SempleOutcome::Found(w) = semple_search(&poly(&[-2, 1]), SempleBounds::default()).unwrap() else {
        panic!()
    };
    assert_eq!((w.q.clone(), w.k, w.ell), (BigInt::from(1), 1, 1));
}

#[test]
fn p_part_counts_factors() {
    assert_eq!(p_part(&BigInt::from(54), 3).unwrap(), 3);
    assert_eq!(p_part(&BigInt::from(1), 5).unwrap(), 0);
    assert!(p_part(&BigInt::from(0), 3).is_err());
}
