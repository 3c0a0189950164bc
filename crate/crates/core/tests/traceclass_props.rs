mod common;

use chebpart::arith::RationalTrace;
use chebpart::partition::PartitionClass;
use chebpart::traceclass::{
    associate, classify_trace, is_trivial, relate_partitions, square, theoretical_densities, twin,
    TraceClassification,
};
use proptest::prelude::*;

use common::{nontrivial_rational, odd_prime_below, rat};

fn rt(s: &str) -> RationalTrace {
    rat(s)
}

#[test]
fn panel_tags() {
    let cases = [
        ("1/2", "Generic"),
        ("-5/2", "CaseA"),
        ("-2/3", "CaseB"),
        ("6/5", "CaseC"),
        ("7", "HasRoot"),
        ("-7", "TwinRoot"),
        ("0", "Trivial"),
    ];
    for (q, tag) in cases {
        assert_eq!(classify_trace(&rt(q)).name(), tag, "q = {q}");
    }
}

#[test]
fn panel_profiles() {
    let third = rt("1/3");
    let p = theoretical_densities(&rt("1/2")).unwrap();
    assert_eq!((p.d0.clone(), p.d1.clone()), (third.clone(), third));
    let p = theoretical_densities(&rt("-5/2")).unwrap();
    assert_eq!((p.d0.clone(), p.d1.clone(), p.d(2)), (rt("7/24"), rt("7/24"), rt("1/3")));
    let p = theoretical_densities(&rt("-2/3")).unwrap();
    assert_eq!((p.d0.clone(), p.d1.clone(), p.d(2)), (rt("7/24"), rt("7/24"), rt("1/12")));
    let p = theoretical_densities(&rt("6/5")).unwrap();
    assert_eq!((p.d0.clone(), p.d1.clone()), (rt("1/6"), rt("1/6")));
}

#[test]
fn six_fifths_associate_is_eight_fifths() {
    assert_eq!(associate(&rt("6/5")).unwrap().abs(), rt("8/5"));
}

#[test]
fn trivial_traces_have_no_profile() {
    for q in ["0", "1", "-1", "2", "-2"] {
        assert!(is_trivial(&rt(q)));
        assert!(theoretical_densities(&rt(q)).is_err());
    }
}

proptest! {
    #[test]
    fn profiles_sum_to_one(q in nontrivial_rational()) {
        let p = theoretical_densities(&q).unwrap();
        prop_assert_eq!(&p.total, &RationalTrace::one());
        let tail: RationalTrace = (0..=p.dyadic_from + 40).map(|s| p.d(s)).fold(RationalTrace::zero(), |a, b| a + b);
        prop_assert!(tail <= RationalTrace::one());
        prop_assert!((RationalTrace::one() - tail).to_f64() < 1e-9);
        prop_assert_eq!(p.d(p.dyadic_from + 1) * RationalTrace::from(2), p.d(p.dyadic_from));
    }

    #[test]
    fn twin_profile_swaps(q in nontrivial_rational()) {
        let p = theoretical_densities(&q).unwrap();
        prop_assert_eq!(theoretical_densities(&twin(&q)).unwrap(), p.twin());
    }

    #[test]
    fn square_profile_shifts(q in nontrivial_rational()) {
        let sq = square(&q);
        prop_assume!(!is_trivial(&sq));
        let p = theoretical_densities(&q).unwrap();
        prop_assert_eq!(theoretical_densities(&sq).unwrap(), p.squared().unwrap());
    }

    #[test]
    fn exactly_one_tag_with_consistent_root(q in nontrivial_rational()) {
        match classify_trace(&q) {
            TraceClassification::HasRoot { root } => prop_assert_eq!(square(&root), q),
            TraceClassification::TwinRoot { root } => prop_assert_eq!(square(&root), -&q),
            TraceClassification::Trivial => prop_assert!(false, "nontrivial trace tagged trivial"),
            t => prop_assert!(t.is_primitive()),
        }
    }

    #[test]
    fn relations_hold_pointwise(q in nontrivial_rational(), p in odd_prime_below(3000)) {
        for rel in relate_partitions(&q).relations {
            prop_assert_ne!(rel.holds_at(p).unwrap(), Some(false), "{} at {}", rel, p);
        }
    }
}

#[test]
fn denominator_divisors_have_no_density() {
    let p = theoretical_densities(&rt("1/2")).unwrap();
    assert_eq!(p.of_class(PartitionClass::DenominatorDivisor), RationalTrace::zero());
}
