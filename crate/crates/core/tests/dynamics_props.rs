mod common;

use chebpart::arith::RationalTrace;
use chebpart::cheb::c;
use chebpart::cheb::identities::circle_point;
use chebpart::dynamics::{
    chebyshev_map_orbit, chebyshev_map_orbit_capped, orbit_divisor_report, rotation_orbit,
    u_pow2_factorization_holds, OrbitViolation, DEFAULT_STEP_CAP,
};
use chebpart::partition::classify_prime;
use chebpart::verify::ORBIT_STARTS;
use proptest::prelude::*;

use common::rat;

#[test]
fn quadratic_orbits_meet_the_divisor_bound() {
    for start in ORBIT_STARTS {
        let orbit = chebyshev_map_orbit(2, &rat(start), 8).unwrap();
        let rep = orbit_divisor_report(&orbit, 1_000_000);
        assert!(rep.holds(), "{start}: {:?}", rep.violations);
        for st in &rep.steps {
            for p in st.odd_primes() {
                assert!(p >= (1 << (st.step + 1)) - 1, "{start}: step {} has {p}", st.step);
                let q = &orbit.points[0].q;
                assert_eq!(classify_prime(q, p), st.expected_class, "{start}, p = {p}");
            }
        }
    }
}

#[test]
fn first_quadratic_values_from_one_third() {
    let orbit = chebyshev_map_orbit(2, &rat("1/3"), 2).unwrap();
    let qs: Vec<String> = orbit.points.iter().map(|p| p.q.to_string()).collect();
    assert_eq!(qs, ["1/3", "-17/9", "127/81"]);
}

#[test]
fn cubic_orbits_form_a_chain() {
    for start in ORBIT_STARTS {
        let orbit = chebyshev_map_orbit(3, &rat(start), 5).unwrap();
        let rep = orbit_divisor_report(&orbit, 1_000_000);
        assert!(
            !rep.violations.iter().any(|v| matches!(v, OrbitViolation::Chain { .. })),
            "{start}: {:?}",
            rep.violations
        );
    }
}

#[test]
fn step_cap_is_enforced_and_overridable() {
    let q = rat("1/3");
    assert!(chebyshev_map_orbit(2, &q, DEFAULT_STEP_CAP + 1).is_err());
    assert!(chebyshev_map_orbit_capped(2, &q, 3, 2).is_err());
    assert!(chebyshev_map_orbit_capped(2, &q, 13, 13).is_ok());
    assert!(chebyshev_map_orbit(1, &q, 3).is_err());
    assert!(chebyshev_map_orbit(2, &rat("2"), 3).is_err());
}

#[test]
fn off_circle_rotation_is_rejected() {
    assert!(rotation_orbit(&rat("1"), Some(&rat("1")), 3).is_err());
}

#[test]
fn periodic_rotation_is_flagged() {
    let orbit = rotation_orbit(&rat("1"), None, 6).unwrap();
    assert!(orbit.periodic);
    assert!(orbit_divisor_report(&orbit, 1000).violations.is_empty());
}

#[test]
fn rotation_divisors_split_by_index_parity() {
    let orbit = rotation_orbit(&rat("3"), None, 16).unwrap();
    let rep = orbit_divisor_report(&orbit, 1_000_000);
    assert!(rep.holds(), "{:?}", rep.violations);
    let split = rep.split.expect("rotation orbits report a split");
    assert!(split.pi2 > 0 && split.higher > 0, "{split:?}");
}

proptest! {
    #[test]
    fn rotation_stays_on_the_circle(t in common::small_rational(), steps in 1usize..25) {
        let (q, w) = circle_point(&t);
        let orbit = rotation_orbit(&q, Some(&w), steps).unwrap();
        let four = RationalTrace::from(4);
        for pt in &orbit.points {
            let wn = pt.w.clone().unwrap();
            prop_assert_eq!(pt.q.square() + wn.square(), four.clone());
        }
    }

    #[test]
    fn map_iterates_are_chebyshev_values(q in common::nontrivial_rational(), m in 2u32..=4, n in 0usize..=3) {
        let orbit = chebyshev_map_orbit(m, &q, n).unwrap();
        prop_assert_eq!(&orbit.points[n].q, &c((m as u64).pow(n as u32), &q));
    }

    #[test]
    fn power_of_two_u_factors(q in common::small_rational(), n in 0u32..=6) {
        prop_assert!(u_pow2_factorization_holds(&q, n));
    }
}
