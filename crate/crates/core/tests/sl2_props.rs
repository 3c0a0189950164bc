mod common;

use chebpart::arith::{is_odd_prime, FpElement, RationalTrace};
use chebpart::cheb::{cheb_eval_mod, ChebKind};
use chebpart::sl2::{appearance_index, companion_matrix, congruence_suite, euler_criterion, mat_pow};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{reduce, xi_scan};

fn random_odd_prime(rng: &mut ChaCha8Rng, below: u64) -> u64 {
    loop {
        let p = rng.gen_range(3..below) | 1;
        if is_odd_prime(p) {
            return p;
        }
    }
}

/// `A^n = [[-U_{n-1}, U_n], [-U_n, U_{n+1}]]`; the trace is `C_n`.
#[test]
fn matrix_power_entries_are_chebyshev_values() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0001);
    for _ in 0..200 {
        let p = random_odd_prime(&mut rng, 100_000);
        let q = FpElement::new(rng.gen_range(0..p), p);
        let n = rng.gen_range(1..=1_000_000u64);
        let a = mat_pow(&companion_matrix(q), n);
        assert!(a.det().is_one(), "det A^{n} mod {p}");
        assert_eq!(a.trace(), cheb_eval_mod(ChebKind::FirstC, n, q).unwrap());
        assert_eq!(a.get(0, 1), cheb_eval_mod(ChebKind::SecondU, n, q).unwrap());
        assert_eq!(a.get(1, 1), cheb_eval_mod(ChebKind::SecondU, n + 1, q).unwrap());
        assert_eq!(-a.get(0, 0), cheb_eval_mod(ChebKind::SecondU, n - 1, q).unwrap());
    }
}

#[test]
fn powers_compose() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0002);
    for _ in 0..200 {
        let p = random_odd_prime(&mut rng, 1 << 40);
        let a = companion_matrix(FpElement::new(rng.gen_range(0..p), p));
        let (m, n) = (rng.gen_range(0..1_000_000u64), rng.gen_range(0..1_000_000u64));
        assert_eq!(mat_pow(&a, m).mul(&mat_pow(&a, n)), mat_pow(&a, m + n));
    }
}

proptest! {
    #[test]
    fn euler_and_congruences(q in common::small_rational(), p in common::odd_prime_below(10_000)) {
        if reduce(&q, p).is_none() {
            prop_assert!(euler_criterion(&q, p).is_err());
            return Ok(());
        }
        prop_assert!(euler_criterion(&q, p).unwrap().verified);
        prop_assert!(congruence_suite(&q, p).unwrap().all_hold());
    }

    #[test]
    fn appearance_index_matches_scan(q in common::small_rational(), p in common::odd_prime_below(2000)) {
        let Some(qm) = reduce(&q, p) else { return Ok(()) };
        let ai = appearance_index(&q, p).unwrap();
        prop_assert_eq!(ai.xi, xi_scan(qm, p));
        let scalar = mat_pow(&companion_matrix(FpElement::new(qm, p)), ai.xi).as_scalar();
        prop_assert_eq!(scalar.and_then(|s| s.as_sign()), Some(ai.sign_at_xi));
        let n = p as i64 - ai.delta_symbol as i64;
        prop_assert_eq!(n.rem_euclid(ai.xi as i64), 0);
    }
}

#[test]
fn degenerate_discriminant_gives_xi_p() {
    // q = 2 mod p forces (δ|p) = 0.
    for p in [3u64, 5, 7, 11, 101] {
        let q = RationalTrace::from(2 + p as i64);
        let ai = appearance_index(&q, p).unwrap();
        assert_eq!((ai.delta_symbol, ai.xi), (0, p));
    }
}
