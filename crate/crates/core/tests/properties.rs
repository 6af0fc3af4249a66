use proptest::prelude::*;

use num::BigInt;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use speckit_core::class::{compile, CompileContext};
use speckit_core::identities::{random, verify_transfer_rules};
use speckit_core::operators::{apply_exp_shift, flow_direct, flow_exp};
use speckit_core::oracle::{classify, partial_matching_count, Oracle};
use speckit_core::rational::{int, rat, Rational};
use speckit_core::{ClassExpr, MultiIndex, TruncatedSeries, TruncationSpec, Var};

fn caps(spec: &str) -> TruncationSpec {
    spec.parse().unwrap()
}

fn coefficient() -> impl Strategy<Value = Rational> {
    (-5i64..=5, 1i64..=4).prop_map(|(n, d)| rat(n, d))
}

/// Polynomials in `x`, `y`, `t` with exponents up to 4, under `spec`.
fn series(spec: &'static str, zero_constant: bool) -> impl Strategy<Value = TruncatedSeries> {
    prop::collection::vec(((0u32..=4, 0u32..=4, 0u32..=4), coefficient()), 0..6).prop_map(move |terms| {
        let terms = terms
            .into_iter()
            .filter(|((a, b, c), _)| !zero_constant || a + b + c > 0)
            .map(|((a, b, c), q)| (MultiIndex::from_pairs([("x", a), ("y", b), ("t", c)]), q));
        TruncatedSeries::from_terms(terms, caps(spec))
    })
}

const CAPS: &str = "x:4,y:4,t:4";

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn addition_and_multiplication_commute(f in series(CAPS, false), g in series(CAPS, false)) {
        prop_assert_eq!(f.add(&g), g.add(&f));
        prop_assert_eq!(f.mul(&g), g.mul(&f));
    }

    #[test]
    fn multiplication_associates_and_distributes(
        f in series(CAPS, false),
        g in series(CAPS, false),
        h in series(CAPS, false),
    ) {
        prop_assert_eq!(f.mul(&g).mul(&h), f.mul(&g.mul(&h)));
        prop_assert_eq!(f.mul(&g.add(&h)), f.mul(&g).add(&f.mul(&h)));
    }

    #[test]
    fn additive_inverse_and_unit(f in series(CAPS, false)) {
        prop_assert!(f.sub(&f).is_zero());
        prop_assert_eq!(f.mul(&TruncatedSeries::one(caps(CAPS))), f);
    }

    #[test]
    fn leibniz_rule_below_the_cap(f in series(CAPS, false), g in series(CAPS, false)) {
        let x = Var::new("x");
        let lower = caps("x:3,y:4,t:4");
        let lhs = f.mul(&g).differentiate(&x).truncate(&lower);
        let rhs = f.differentiate(&x).mul(&g).add(&f.mul(&g.differentiate(&x))).truncate(&lower);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn exp_and_log_invert(f in series(CAPS, true)) {
        let one = TruncatedSeries::one(caps(CAPS));
        prop_assert_eq!(f.log_one_plus().unwrap().exp_series().unwrap(), one.add(&f));
        prop_assert_eq!(f.exp_series().unwrap().sub(&one).log_one_plus().unwrap(), f);
    }

    #[test]
    fn geometric_inverts_one_minus(f in series(CAPS, true)) {
        let one = TruncatedSeries::one(caps(CAPS));
        prop_assert_eq!(f.geometric().unwrap().mul(&one.sub(&f)), one);
    }

    #[test]
    fn fractional_powers_add(f in series(CAPS, true), p in coefficient(), q in coefficient()) {
        let lhs = f.pow_frac(&p).unwrap().mul(&f.pow_frac(&q).unwrap());
        prop_assert_eq!(lhs, f.pow_frac(&(p + q)).unwrap());
    }

    #[test]
    fn text_and_json_round_trip(f in series(CAPS, false)) {
        prop_assert_eq!(TruncatedSeries::from_text(&f.to_text()).unwrap(), f.clone());
        prop_assert_eq!(TruncatedSeries::from_json(&f.to_json()).unwrap(), f);
    }

    #[test]
    fn exp_shift_matches_substitution(f in series(CAPS, false)) {
        let (x, y) = (Var::new("x"), Var::new("y"));
        let shifted = TruncatedSeries::variable(x.clone(), caps(CAPS)).add(&TruncatedSeries::variable(y.clone(), caps(CAPS)));
        prop_assert_eq!(apply_exp_shift(&f, &x, &y), f.substitute(&x, &shifted).unwrap());
    }

    #[test]
    fn class_json_round_trip(seed in any::<u64>()) {
        let e = random::any_class(&mut ChaCha8Rng::seed_from_u64(seed), 3);
        prop_assert_eq!(ClassExpr::from_json(&e.to_json()).unwrap(), e);
    }

    #[test]
    fn compiled_counts_are_nonnegative_integers(seed in any::<u64>()) {
        let e = random::admissible_class(&mut ChaCha8Rng::seed_from_u64(seed), 3);
        let s = compile(&e, &CompileContext::new(caps(CAPS)).unwrap()).unwrap();
        let t = Var::new("t");
        for (m, _) in s.terms() {
            let count = s.egf_count(m, &t).unwrap();
            prop_assert!(count.is_integer() && count >= int(0), "{} at {}", count, m);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn transfer_rules_hold_for_any_seed(seed in any::<u64>()) {
        let r = verify_transfer_rules(&caps(CAPS), 4, seed).unwrap();
        prop_assert!(r.passed(), "{:?}", r.mismatches);
    }

    #[test]
    fn flow_routes_agree(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let exact = TruncationSpec::new();
        let [q, v, f] = std::array::from_fn(|_| random::polynomial(&mut rng, &["x"], 3, 3, &exact));
        let (x, lambda) = (Var::new("x"), Var::new("lambda"));
        let c = caps("lambda:5");
        let flow = flow_exp(&q, &v, &f, &x, &lambda, &c).unwrap();
        prop_assert_eq!(flow.result, flow_direct(&q, &v, &f, &x, &lambda, &c).unwrap());
    }
}

#[test]
fn matchings_partition_the_doubletons() {
    let oracle = Oracle::default();
    for n in 0..=5 {
        let mut total = 0u64;
        for m in oracle.matchings(n).unwrap() {
            let p = classify(&m);
            let sizes: usize = p.closed_chains.iter().chain(&p.open_chains).sum();
            assert_eq!(sizes, n, "{m}");
            total += 1;
        }
        let expected: BigInt = (0..=n).map(|k| partial_matching_count(n, k)).sum();
        assert_eq!(BigInt::from(total), expected);
    }
}
