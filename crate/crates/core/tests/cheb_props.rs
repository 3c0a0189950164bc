mod common;

use chebpart::arith::{FpElement, RationalTrace};
use chebpart::cheb::{c, cheb_coeffs, cheb_eval, cheb_eval_mod, chebotomic, u, v, w, ChebKind};
use num_bigint::BigInt;
use proptest::prelude::*;

use common::{cu_by_recurrence, parse_poly, reduce, small_rational, GOLDEN_C, GOLDEN_U};

fn ascending(kind: ChebKind, n: u64) -> Vec<i64> {
    cheb_coeffs(kind, n)
        .expect("valid index")
        .coeffs()
        .iter()
        .map(|x| i64::try_from(x).expect("small coefficient"))
        .collect()
}

#[test]
fn golden_table_parses_to_monic_rows_of_the_right_degree() {
    for (n, row) in GOLDEN_C {
        let co = parse_poly(row);
        let expect_deg = n as usize;
        assert_eq!(co.len() - 1, expect_deg, "C_{n}");
        assert_eq!(*co.last().unwrap(), if n == 0 { 2 } else { 1 });
    }
    for (n, row) in GOLDEN_U {
        assert_eq!(parse_poly(row).len() as u64, n, "U_{n}");
    }
}

#[test]
fn golden_rows_match_bit_exactly() {
    for (n, row) in GOLDEN_C {
        assert_eq!(ascending(ChebKind::FirstC, n), parse_poly(row), "C_{n}");
    }
    for (n, row) in GOLDEN_U {
        assert_eq!(ascending(ChebKind::SecondU, n), parse_poly(row), "U_{n}");
    }
}

#[test]
fn normalization_at_two() {
    let two = RationalTrace::from(2);
    for n in 0..20 {
        assert_eq!(c(n, &two), two);
        assert_eq!(u(n, &two), RationalTrace::from(n as i64));
    }
}

#[test]
fn odd_families_reject_even_index() {
    assert!(cheb_coeffs(ChebKind::ThirdV, 4).is_err());
    assert!(cheb_eval(ChebKind::FourthW, 0, &RationalTrace::one()).is_err());
}

#[test]
fn chebotomic_degrees_are_half_phi() {
    for k in 3..40u64 {
        let deg = chebotomic(k).unwrap().degree().unwrap() as u64;
        assert_eq!(deg, chebpart::cheb::euler_phi(k) / 2, "Psi_{k}");
    }
}

proptest! {
    #[test]
    fn matrix_power_matches_recurrence(q in small_rational(), n in 0u64..60) {
        let (un, cn) = cu_by_recurrence(n, q.as_ratio());
        prop_assert_eq!(u(n, &q).into_ratio(), un);
        prop_assert_eq!(c(n, &q).into_ratio(), cn);
    }

    #[test]
    fn odd_families_from_u(q in small_rational(), k in 0u64..30) {
        let n = 2 * k + 1;
        let (uk, _) = cu_by_recurrence(k, q.as_ratio());
        let (uk1, _) = cu_by_recurrence(k + 1, q.as_ratio());
        prop_assert_eq!(v(n, &q).into_ratio(), &uk1 - &uk);
        prop_assert_eq!(w(n, &q).into_ratio(), &uk1 + &uk);
    }

    #[test]
    fn coefficients_evaluate_like_the_matrix(q in small_rational(), n in 0u64..25) {
        for kind in ChebKind::ALL {
            let Ok(poly) = cheb_coeffs(kind, n) else { continue };
            prop_assert_eq!(poly.eval(&q), cheb_eval(kind, n, &q).unwrap());
        }
    }

    #[test]
    fn modular_evaluation_is_reduction(
        q in small_rational(),
        p in common::odd_prime_below(400),
        n in 1u64..400,
    ) {
        let Some(qm) = reduce(&q, p) else { return Ok(()) };
        let qf = FpElement::new(qm, p);
        for kind in ChebKind::ALL {
            let Ok(exact) = cheb_eval(kind, n, &q) else { continue };
            // Exact values have denominators prime to p.
            let expect = reduce(&exact, p).expect("p-integral");
            prop_assert_eq!(cheb_eval_mod(kind, n, qf).unwrap().value(), expect);
        }
    }

    #[test]
    fn integer_points_stay_integral(a in -20i64..=20, n in 0u64..30) {
        let q = RationalTrace::from(a);
        prop_assert!(c(n, &q).is_integer());
        let poly = cheb_coeffs(ChebKind::FirstC, n).unwrap();
        prop_assert_eq!(RationalTrace::from(poly.eval_int(&BigInt::from(a))), c(n, &q));
    }
}
