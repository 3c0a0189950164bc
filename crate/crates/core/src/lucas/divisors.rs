use std::collections::BTreeSet;

use num_integer::Integer;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::params::{simple_value, trace_of, LucasParams};
use crate::arith::FpElement;
use crate::error::{Error, Result};
use crate::partition::{classify_prime, PartitionClass};
use crate::sl2::check_odd_prime;

fn divides(p: u64, n: &num_bigint::BigInt) -> bool {
    n.mod_floor(&num_bigint::BigInt::from(p)).is_zero()
}

/// The class of `p` read directly off the sequences of the simple value
/// `(aP, aR)`: odd `n` with `p | L_n` gives `Π_0`, `p | K_{2^{s-1} n}` gives
/// `Π_s`, and divisors of `a` go to `Π_1`.
///
/// Scans indices up to `2(p+1)`, which always suffices.
pub fn divisor_class_direct(params: &LucasParams, p: u64) -> Result<PartitionClass> {
    check_odd_prime(p)?;
    let sv = simple_value(params)?;
    if divides(p, &sv.r) {
        return Err(Error::ExcludedPrime {
            q: params.to_string(),
            p,
        });
    }
    if divides(p, &sv.a) {
        return Ok(PartitionClass::Pi1);
    }
    let simple = sv.params();
    let t = FpElement::from_bigint(simple.t(), p);
    let q = FpElement::from_bigint(simple.q(), p);
    let n_max = 2 * (p + 1);
    let mut found = BTreeSet::new();
    let (mut l_prev, mut l_cur) = (FpElement::zero(p), FpElement::one(p));
    let (mut k_prev, mut k_cur) = (FpElement::new(2, p), t);
    for n in 1..=n_max {
        if n % 2 == 1 && l_cur.is_zero() {
            found.insert(PartitionClass::Pi0);
        }
        if k_cur.is_zero() {
            found.insert(PartitionClass::from_index(n.trailing_zeros() + 1));
        }
        (l_prev, l_cur) = (l_cur, t * l_cur - q * l_prev);
        (k_prev, k_cur) = (k_cur, t * k_cur - q * k_prev);
    }
    let mut it = found.iter();
    match (it.next(), it.next()) {
        (None, _) => Err(Error::Unresolved { p, n_max }),
        (Some(&c), None) => Ok(c),
        (Some(a), Some(b)) => Err(Error::PartitionViolation {
            p,
            detail: format!("{params}: both {a} and {b} among sequence divisors"),
        }),
    }
}

/// Both routes for one prime.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DivisorRoutes {
    pub p: u64,
    /// `classify_prime(trace_of(params), p)`.
    pub via_trace: PartitionClass,
    pub via_sequences: PartitionClass,
}

impl DivisorRoutes {
    pub fn agree(&self) -> bool {
        self.via_trace == self.via_sequences
    }
}

pub fn divisor_routes(params: &LucasParams, p: u64) -> Result<DivisorRoutes> {
    let via_sequences = divisor_class_direct(params, p)?;
    Ok(DivisorRoutes {
        p,
        via_trace: classify_prime(&trace_of(params), p),
        via_sequences,
    })
}

/// The class of `p` in the partition of `(T, Q)`, checked against the
/// direct sequence search. Divisors of `R` are excluded.
pub fn divisor_class(params: &LucasParams, p: u64) -> Result<PartitionClass> {
    let r = divisor_routes(params, p)?;
    if !r.agree() {
        return Err(Error::PartitionViolation {
            p,
            detail: format!(
                "{params}: trace route {} but sequence route {}",
                r.via_trace, r.via_sequences
            ),
        });
    }
    Ok(r.via_trace)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{primes_up_to, RationalTrace};

    fn lp(t: i64, q: i64) -> LucasParams {
        LucasParams::new(t, q).unwrap()
    }

    #[test]
    fn fibonacci_at_eleven() {
        // q = -3 is the twin of 3, and 11 is in Π_0(3).
        assert_eq!(trace_of(&lp(1, -1)), RationalTrace::from_int(-3));
        assert_eq!(divisor_class(&lp(1, -1), 11).unwrap(), PartitionClass::Pi1);
        assert_eq!(divisor_class(&lp(1, -2), 3).unwrap(), classify_prime(&"-5/2".parse().unwrap(), 3));
        // q = -1: W_3(-1) = 0 puts every odd prime in Π_0.
        assert_eq!(divisor_class(&lp(2, 4), 7).unwrap(), PartitionClass::Pi0);
    }

    #[test]
    fn excluded_and_a_divisors() {
        // (12,50) has R = 25; (6,3) has a = 3.
        assert!(matches!(divisor_class(&lp(12, 50), 5), Err(Error::ExcludedPrime { .. })));
        assert_eq!(divisor_class(&lp(6, 3), 3).unwrap(), PartitionClass::Pi1);
    }

    #[test]
    fn routes_agree_small() {
        for (t, q) in [(1, -1), (1, -2), (3, 2), (2, 3), (2, 4), (5, 7), (0, 3), (4, -9)] {
            for &p in primes_up_to(500).iter().skip(1) {
                match divisor_routes(&lp(t, q), p) {
                    Ok(r) => assert!(r.agree(), "({t},{q}) at {p}: {r:?}"),
                    Err(Error::ExcludedPrime { .. }) => {}
                    Err(e) => panic!("({t},{q}) at {p}: {e}"),
                }
            }
        }
    }
}
