use branchix::branching::{compute_branching, BranchingOptions};
use branchix::engine::element_order;
use branchix::poly::{integral, interpolate, parse, IntPolynomial};
use branchix::verify::{empirical_cp, oracle_commuting_probability};
use branchix::{Family, GroupSpec};
use num_bigint::BigInt;
use proptest::prelude::*;

fn group() -> impl Strategy<Value = GroupSpec> {
    (
        prop_oneof![Just(Family::Gt), Just(Family::Ut)],
        2usize..=5,
        prop_oneof![Just(3u32), Just(5), Just(7)],
    )
        .prop_map(|(f, n, q)| GroupSpec::new(f, n, q).unwrap())
}

/// A group with three element codes drawn uniformly from it.
fn group_with_elements() -> impl Strategy<Value = (GroupSpec, [u64; 3])> {
    group().prop_flat_map(|spec| {
        let order = spec.order_u64().unwrap();
        (Just(spec), [0..order, 0..order, 0..order])
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn codes_round_trip((spec, codes) in group_with_elements()) {
        for c in codes {
            let m = spec.decode(c).unwrap();
            prop_assert!(spec.contains(&m).is_ok());
            prop_assert_eq!(spec.encode(&m).unwrap(), c);
        }
    }

    #[test]
    fn group_laws((spec, [a, b, c]) in group_with_elements()) {
        let (a, b, c) = (spec.decode(a).unwrap(), spec.decode(b).unwrap(), spec.decode(c).unwrap());
        prop_assert_eq!(spec.mul(&spec.mul(&a, &b), &c), spec.mul(&a, &spec.mul(&b, &c)));
        prop_assert!(spec.mul(&a, &spec.inv(&a)).is_identity());
        prop_assert!(spec.contains(&spec.mul(&a, &b)).is_ok());
    }

    #[test]
    fn conjugation_preserves_order_and_commuting((spec, [g, x, y]) in group_with_elements()) {
        let (g, x, y) = (spec.decode(g).unwrap(), spec.decode(x).unwrap(), spec.decode(y).unwrap());
        let g_inv = spec.inv(&g);
        let (cx, cy) = (spec.conj(&g, &x, &g_inv), spec.conj(&g, &y, &g_inv));
        prop_assert_eq!(element_order(&spec, &x), element_order(&spec, &cx));
        prop_assert_eq!(x.commutes_with(&y, spec.field()), cx.commutes_with(&cy, spec.field()));
        prop_assert!(x.pow(element_order(&spec, &x), spec.field()).is_identity());
    }

    #[test]
    fn interpolation_recovers_integer_polynomials(
        coeffs in proptest::collection::vec(-50i64..50, 1..6),
    ) {
        let p = IntPolynomial::from_i64s(&coeffs);
        let primes = [3u64, 5, 7, 11, 13, 17];
        let points: Vec<(BigInt, BigInt)> = primes[..coeffs.len()]
            .iter()
            .map(|&q| (BigInt::from(q), p.eval_u64(q)))
            .collect();
        prop_assert_eq!(integral(&interpolate(&points)).unwrap(), p.clone());
        prop_assert_eq!(parse(&p.to_string()).unwrap(), p);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    /// The matrix route and brute-force tuple counting give the same cp_k.
    #[test]
    fn matrix_cp_matches_tuple_counting(
        (family, n, q) in prop_oneof![
            Just((Family::Gt, 2usize, 3u32)),
            Just((Family::Gt, 2, 5)),
            Just((Family::Gt, 2, 7)),
            Just((Family::Ut, 3, 3)),
            Just((Family::Ut, 3, 5)),
            Just((Family::Ut, 2, 7)),
            Just((Family::Gt, 3, 3)),
        ],
        k in 2usize..=3,
    ) {
        let spec = GroupSpec::new(family, n, q).unwrap();
        let (_, m) = compute_branching(&spec, &BranchingOptions::default()).unwrap();
        prop_assert_eq!(empirical_cp(&m, k).unwrap(), oracle_commuting_probability(&spec, k).unwrap());
    }
}
