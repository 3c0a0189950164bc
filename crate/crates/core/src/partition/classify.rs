use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::arith::{legendre_rational, rational_mod, FpElement, RationalTrace};
use crate::error::{Error, Result};
use crate::sl2::{appearance_index_mod, check_odd_prime, delta, AppearanceIndex};

/// The class of an odd prime in the partition of a rational trace.
///
/// Ordering: `Pi0 < Pi1 < Pi(2) < Pi(3) < … < DenominatorDivisor`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum PartitionClass {
    /// `W_n(q) ≡ 0` for some odd `n`.
    Pi0,
    /// `V_n(q) ≡ 0` for some odd `n`.
    Pi1,
    /// `C_{2^{s-2} n}(q) ≡ 0` for some odd `n`; always `s >= 2`.
    Pi(u32),
    /// `p` divides the denominator of `q`.
    DenominatorDivisor,
}

impl PartitionClass {
    /// `Pi(s)`, normalizing `s = 0, 1` to `Pi0`, `Pi1`.
    pub fn from_index(s: u32) -> Self {
        match s {
            0 => PartitionClass::Pi0,
            1 => PartitionClass::Pi1,
            s => PartitionClass::Pi(s),
        }
    }

    /// The subscript `s`, or `None` for a denominator divisor.
    pub fn index(self) -> Option<u32> {
        match self {
            PartitionClass::Pi0 => Some(0),
            PartitionClass::Pi1 => Some(1),
            PartitionClass::Pi(s) => Some(s),
            PartitionClass::DenominatorDivisor => None,
        }
    }

    /// Membership in `Π_* = ⋃_{s>=2} Π_s`.
    pub fn is_star(self) -> bool {
        matches!(self, PartitionClass::Pi(_))
    }
}

impl fmt::Display for PartitionClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PartitionClass::Pi0 => write!(f, "Pi0"),
            PartitionClass::Pi1 => write!(f, "Pi1"),
            PartitionClass::Pi(s) => write!(f, "Pi({s})"),
            PartitionClass::DenominatorDivisor => write!(f, "DenominatorDivisor"),
        }
    }
}

impl FromStr for PartitionClass {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "Pi0" => Ok(PartitionClass::Pi0),
            "Pi1" => Ok(PartitionClass::Pi1),
            "DenominatorDivisor" => Ok(PartitionClass::DenominatorDivisor),
            _ => s
                .strip_prefix("Pi(")
                .and_then(|r| r.strip_suffix(')'))
                .and_then(|n| n.parse::<u32>().ok())
                .filter(|&n| n >= 2)
                .map(PartitionClass::Pi)
                .ok_or_else(|| Error::InvalidArgument(format!("unknown class `{s}`"))),
        }
    }
}

/// A classified prime with the appearance index that decided it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeClassification {
    pub p: u64,
    pub class: PartitionClass,
    /// Absent for denominator divisors.
    pub appearance: Option<AppearanceIndex>,
}

fn class_from_appearance(ai: &AppearanceIndex) -> PartitionClass {
    if ai.xi % 2 == 1 {
        if ai.sign_at_xi == 1 {
            PartitionClass::Pi0
        } else {
            PartitionClass::Pi1
        }
    } else {
        PartitionClass::Pi(ai.xi.trailing_zeros() + 1)
    }
}

/// Classifies `p` with its appearance index. Fails only for `p` not an odd
/// number `>= 3`.
pub fn classify_prime_detailed(q: &RationalTrace, p: u64) -> Result<PrimeClassification> {
    check_odd_prime(p)?;
    let qm = match rational_mod(q, p) {
        Ok(x) => x,
        Err(_) => {
            return Ok(PrimeClassification {
                p,
                class: PartitionClass::DenominatorDivisor,
                appearance: None,
            })
        }
    };
    let ds = legendre_rational(&delta(q), p)?;
    let ai = appearance_index_mod(qm, ds)?;
    Ok(PrimeClassification {
        p,
        class: class_from_appearance(&ai),
        appearance: Some(ai),
    })
}

/// The class of the odd prime `p` in the partition of `q`.
///
/// Odd `ξ` puts `p` in `Π_0` or `Π_1` according to `A^ξ = ±I`; `ξ = 2^{s+1} m`
/// with `m` odd puts it in `Π_{s+2}`.
///
/// # Panics
/// If `p` is even or below 3.
pub fn classify_prime(q: &RationalTrace, p: u64) -> PartitionClass {
    classify_prime_detailed(q, p)
        .unwrap_or_else(|e| panic!("classify_prime({q}, {p}): {e}"))
        .class
}

/// The definitional classifier: scans `W_n, V_n` for odd `n <= n_max` and
/// `C_m` for `m <= n_max` by their own recurrences, and returns the unique
/// class found. `n_max >= p + 1` always resolves.
pub fn classify_prime_bruteforce(q: &RationalTrace, p: u64, n_max: u64) -> Result<PartitionClass> {
    check_odd_prime(p)?;
    let qm = rational_mod(q, p)?;
    let one = FpElement::one(p);
    let mut found = BTreeSet::new();

    // Odd-index families obey X_{n+2} = q X_n - X_{n-2}.
    let (mut v_prev, mut v_cur) = (one, one);
    let (mut w_prev, mut w_cur) = (-one, one);
    let mut n = 1;
    while n <= n_max {
        if w_cur.is_zero() {
            found.insert(PartitionClass::Pi0);
        }
        if v_cur.is_zero() {
            found.insert(PartitionClass::Pi1);
        }
        (v_prev, v_cur) = (v_cur, qm * v_cur - v_prev);
        (w_prev, w_cur) = (w_cur, qm * w_cur - w_prev);
        n += 2;
    }

    let (mut c_prev, mut c_cur) = (FpElement::new(2, p), qm);
    for m in 1..=n_max {
        if c_cur.is_zero() {
            found.insert(PartitionClass::Pi(2 + m.trailing_zeros()));
        }
        (c_prev, c_cur) = (c_cur, qm * c_cur - c_prev);
    }

    let mut it = found.iter();
    match (it.next(), it.next()) {
        (None, _) => Err(Error::Unresolved { p, n_max }),
        (Some(&c), None) => Ok(c),
        (Some(a), Some(b)) => Err(Error::PartitionViolation {
            p,
            detail: format!("{q}: both {a} and {b} found up to n = {n_max}"),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(s: &str) -> RationalTrace {
        s.parse().unwrap()
    }

    #[test]
    fn small_examples() {
        let q = r("3");
        assert_eq!(classify_prime(&q, 5), PartitionClass::Pi1);
        assert_eq!(classify_prime(&q, 7), PartitionClass::Pi(3));
        assert_eq!(classify_prime(&q, 11), PartitionClass::Pi0);
        assert_eq!(classify_prime(&q, 3), PartitionClass::Pi(2));
        for p in [3u64, 5, 7, 97] {
            assert_eq!(classify_prime(&r("0"), p), PartitionClass::Pi(2));
        }
        assert_eq!(classify_prime(&r("6/5"), 5), PartitionClass::DenominatorDivisor);
    }

    #[test]
    fn bruteforce_examples() {
        assert_eq!(classify_prime_bruteforce(&r("3"), 11, 12).unwrap(), PartitionClass::Pi0);
        assert_eq!(classify_prime_bruteforce(&r("3"), 3, 4).unwrap(), PartitionClass::Pi(2));
        assert_eq!(
            classify_prime_bruteforce(&r("1/2"), 3, 4).unwrap(),
            classify_prime(&r("1/2"), 3)
        );
        assert_eq!(
            classify_prime_bruteforce(&r("3"), 11, 3),
            Err(Error::Unresolved { p: 11, n_max: 3 })
        );
    }

    #[test]
    fn class_strings_round_trip() {
        for c in [
            PartitionClass::Pi0,
            PartitionClass::Pi1,
            PartitionClass::Pi(2),
            PartitionClass::Pi(17),
            PartitionClass::DenominatorDivisor,
        ] {
            assert_eq!(c.to_string().parse::<PartitionClass>().unwrap(), c);
        }
        assert!("Pi(1)".parse::<PartitionClass>().is_err());
    }
}
