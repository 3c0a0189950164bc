mod common;

use chebpart::lucas::{
    classify_params, dickson, dickson_matrix, dickson_mod, divisor_routes, similar, simple_value,
    simple_values, trace_of, twin_params, verify_lucas_identity, DicksonKind, LucasIdentity,
    LucasParams,
};
use chebpart::traceclass::twin;
use num_bigint::BigInt;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_params(seed: u64, n: usize) -> Vec<LucasParams> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| loop {
            let t = rng.gen_range(-40i64..=40);
            let q = rng.gen_range(-40i64..=40);
            if let Ok(p) = LucasParams::new(t, q) {
                break p;
            }
        })
        .collect()
}

#[test]
fn duality_both_lines_on_random_pairs() {
    let params = random_params(11, 50);
    for id in [LucasIdentity::DualityL, LucasIdentity::DualityK] {
        let check = verify_lucas_identity(id, &params, 15);
        assert!(check.holds(), "{id:?}: {:?}", check.first_counterexample);
        assert!(check.instances >= 50 * 8);
    }
}

#[test]
fn every_identity_behaves_as_expected_on_random_pairs() {
    let params = random_params(12, 50);
    for id in LucasIdentity::ALL {
        let check = verify_lucas_identity(id, &params, 15);
        assert!(check.as_expected(), "{id:?}: {:?}", check.first_counterexample);
    }
}

#[test]
fn fibonacci_and_lucas_numbers() {
    let fib = LucasParams::new(1, -1).unwrap();
    let f: Vec<i64> = (0..10).map(|n| i64::try_from(dickson(DicksonKind::L, n, &fib)).unwrap()).collect();
    assert_eq!(f, [0, 1, 1, 2, 3, 5, 8, 13, 21, 34]);
    let l: Vec<i64> = (0..8).map(|n| i64::try_from(dickson(DicksonKind::K, n, &fib)).unwrap()).collect();
    assert_eq!(l, [2, 1, 3, 4, 7, 11, 18, 29]);
}

#[test]
fn twin_pair_from_the_examples() {
    let a = LucasParams::new(1, -2).unwrap();
    let b = LucasParams::new(3, 2).unwrap();
    assert!(similar(&twin_params(&a), &b));
    assert!(similar(&twin_params(&b), &a));
    assert_eq!(trace_of(&b), twin(&trace_of(&a)));
    assert_eq!(classify_params(&a).violated(), ["-2DQ"]);
    assert_eq!(classify_params(&b).violated(), ["2Q"]);
}

proptest! {
    #[test]
    fn matrix_and_recurrence_agree(t in -30i64..=30, q in -30i64..=30, n in 0u64..40) {
        prop_assume!(q != 0);
        let par = LucasParams::new(t, q).unwrap();
        for kind in [DicksonKind::L, DicksonKind::K] {
            let exact = dickson(kind, n, &par);
            prop_assert_eq!(&dickson_matrix(kind, n, &par), &exact);
            let p = 10_007u64;
            let r = ((exact % BigInt::from(p)) + BigInt::from(p)) % BigInt::from(p);
            prop_assert_eq!(BigInt::from(dickson_mod(kind, n, &par, p).unwrap().value()), r);
        }
    }

    /// `(aT, a^2 Q)` is similar to `(T, Q)` and shares its simple value.
    #[test]
    fn scaling_preserves_similarity(t in -30i64..=30, q in -30i64..=30, a in 1i64..=9) {
        prop_assume!(q != 0);
        let par = LucasParams::new(t, q).unwrap();
        let scaled = LucasParams::new(a * t, a * a * q).unwrap();
        prop_assert!(similar(&par, &scaled));
        prop_assert_eq!(trace_of(&par), trace_of(&scaled));
        prop_assert_eq!(simple_value(&par).unwrap(), simple_value(&scaled).unwrap());
        let (pos, neg) = simple_values(&par).unwrap();
        prop_assert!(similar(&pos, &par));
        prop_assert!(similar(&neg, &par));
    }

    #[test]
    fn routes_agree(t in -20i64..=20, q in -20i64..=20, p in common::odd_prime_below(10_000)) {
        prop_assume!(q != 0);
        let par = LucasParams::new(t, q).unwrap();
        match divisor_routes(&par, p) {
            Ok(r) => {
                prop_assert!(r.agree(), "{:?}", r);
            }
            Err(e) => {
                // Only divisors of R, hence of Q, are excluded.
                prop_assert!(matches!(e, chebpart::Error::ExcludedPrime { .. }), "{}", e);
                prop_assert_eq!(q.rem_euclid(p as i64), 0);
            }
        }
    }
}
