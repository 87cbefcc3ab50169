use proptest::prelude::*;

use nilclean_core::axioms;
use nilclean_core::radical::ideal_violation;
use nilclean_core::verify::{proof_chain_sweep, remark_scan};
use nilclean_core::{
    classify_structural, construct_ring, expr, ideal_closure, is_nil_clean_ring,
    is_weakly_nil_clean_ring, quotient_by_ideal, upper_nilradical, Classification, Ring,
    RingSpec, SubsetKind,
};

/// Specs whose rings stay small enough for per-case exhaustive checks.
fn small_spec() -> impl Strategy<Value = RingSpec> {
    let leaf = prop_oneof![
        (1u64..=16).prop_map(RingSpec::zn),
        Just(RingSpec::matrix(2, RingSpec::zn(2))),
    ];
    leaf.prop_recursive(2, 8, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(l, r)| RingSpec::product(l, r)),
            inner.clone().prop_map(RingSpec::nil_quotient),
            (1u64..=3).prop_map(|n| RingSpec::matrix(2, RingSpec::zn(n))),
        ]
    })
    .prop_filter("order at most 96", |s| {
        construct_ring(s).map(|r| r.order() <= 96).unwrap_or(false)
    })
}

fn any_spec() -> impl Strategy<Value = RingSpec> {
    let leaf = (1u64..=1000).prop_map(RingSpec::zn);
    leaf.prop_recursive(3, 16, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(l, r)| RingSpec::product(l, r)),
            ((1u32..=5), inner.clone()).prop_map(|(k, b)| RingSpec::matrix(k, b)),
            inner.prop_map(RingSpec::nil_quotient),
        ]
    })
}

fn build(spec: &RingSpec) -> Ring {
    construct_ring(spec).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn sampled_ring_axioms_hold(spec in small_spec(), seed in any::<u64>()) {
        let r = build(&spec);
        let rep = axioms::check_sampled(&r, 1000, seed);
        prop_assert!(rep.passed(), "{}: {:?}", r.label(), rep.failures.first());
    }

    #[test]
    fn of_int_is_a_unital_homomorphism(spec in small_spec(), m in -500i64..500, k in -500i64..500) {
        let r = build(&spec);
        prop_assert_eq!(r.of_int(1), r.one());
        prop_assert_eq!(r.of_int(0), r.zero());
        prop_assert_eq!(r.add(r.of_int(m), r.of_int(k)).unwrap(), r.of_int(m + k));
        prop_assert_eq!(r.mul(r.of_int(m), r.of_int(k)).unwrap(), r.of_int(m * k));
    }

    #[test]
    fn units_inverses_and_involutions(spec in small_spec()) {
        let r = build(&spec);
        let units = r.special_subset(SubsetKind::Units);
        for x in r.elements() {
            let inv = r.try_inverse(x).unwrap();
            prop_assert_eq!(inv.is_some(), units.contains(&x));
            if let Some(y) = inv {
                prop_assert_eq!(r.mul(x, y).unwrap(), r.one());
                prop_assert_eq!(r.mul(y, x).unwrap(), r.one());
                let others = r.elements().filter(|&z| r.mul(x, z).unwrap() == r.one()).count();
                prop_assert_eq!(others, 1);
            }
        }
        for q in r.special_subset(SubsetKind::Nilpotents) {
            let unit = r.add(r.one(), q).unwrap();
            let slow = r.try_inverse(unit).unwrap();
            prop_assert!(slow.is_some());
            prop_assert_eq!(r.unipotent_inverse(q).unwrap(), slow);
        }
        for a in r.special_subset(SubsetKind::Involutions) {
            prop_assert!(units.contains(&a));
        }
    }

    #[test]
    fn radical_properties(spec in small_spec()) {
        let r = build(&spec);
        let nil_star = upper_nilradical(&r);
        prop_assert!(ideal_violation(&r, nil_star.members()).is_none());
        let nilpotents: Vec<usize> = r.special_subset(SubsetKind::Nilpotents).iter().map(|e| e.index()).collect();
        prop_assert!(nil_star.members().iter().all(|m| nilpotents.contains(m)));
        let nil_is_ideal = ideal_violation(&r, &nilpotents).is_none();
        prop_assert_eq!(nil_is_ideal, nil_star.members() == nilpotents.as_slice());

        let gens: Vec<_> = nil_star.members().iter().map(|&i| r.elem(i).unwrap()).collect();
        let reclosed = ideal_closure(&r, &gens).unwrap();
        prop_assert_eq!(reclosed.members(), nil_star.members());

        let q = quotient_by_ideal(&r, &nil_star).unwrap();
        prop_assert_eq!(r.order(), nil_star.len() * q.order());
        // R/Nil* is reduced only in the commutative case; in general its own
        // upper nilradical vanishes.
        prop_assert_eq!(upper_nilradical(&q).members().to_vec(), vec![q.zero_idx()]);
        if r.elements().all(|x| r.is_central(x).unwrap()) {
            prop_assert_eq!(q.special_subset(SubsetKind::Nilpotents), vec![q.zero()]);
        }
    }

    #[test]
    fn verdicts_are_consistent(spec in small_spec()) {
        let r = build(&spec);
        let nc = is_nil_clean_ring(&r).holds;
        let wnc = is_weakly_nil_clean_ring(&r).holds;
        prop_assert!(!nc || wnc);
        let class = classify_structural(&r);
        prop_assert_eq!(class.is_weakly_nil_clean(), wnc, "{}", r.label());
        prop_assert_eq!(matches!(class, Classification::NilClean), nc);
    }

    #[test]
    fn proof_chain_and_remark_hold(spec in small_spec(), seed in any::<u64>()) {
        let r = build(&spec);
        let chain = proof_chain_sweep(&r, 16, 300, seed);
        prop_assert!(chain.passed(), "{}: {:?}", r.label(), chain.failures.first());
        if r.order() <= 32 {
            let scan = remark_scan(&r, 2);
            prop_assert!(scan.passed(), "{}: {:?}", r.label(), scan.violations.first());
        }
    }

    #[test]
    fn product_predicates_are_componentwise(l in small_spec(), rt in small_spec()) {
        let left = build(&l);
        let right = build(&rt);
        prop_assume!(left.order() * right.order() <= 512);
        let p = build(&RingSpec::product(l, rt));
        let w = right.order();
        for x in (0..p.order()).step_by(3) {
            let (a, b) = (left.elem(x / w).unwrap(), right.elem(x % w).unwrap());
            let px = p.elem(x).unwrap();
            prop_assert_eq!(
                p.is_idempotent(px).unwrap(),
                left.is_idempotent(a).unwrap() && right.is_idempotent(b).unwrap()
            );
            prop_assert_eq!(
                p.nilpotency_index(px).unwrap().is_some(),
                left.nilpotency_index(a).unwrap().is_some() && right.nilpotency_index(b).unwrap().is_some()
            );
        }
        prop_assert_eq!(
            is_nil_clean_ring(&p).holds,
            is_nil_clean_ring(&left).holds && is_nil_clean_ring(&right).holds
        );
    }

    #[test]
    fn format_parse_round_trip(spec in any_spec()) {
        let text = expr::format(&spec);
        prop_assert_eq!(expr::parse(&text).unwrap(), spec);
    }

    #[test]
    fn parse_errors_point_inside_input(text in "[ZMnilquox0-9() ]{0,16}") {
        if let Err(e) = expr::parse(&text) {
            prop_assert!(e.offset < text.len().max(1));
        }
    }
}
