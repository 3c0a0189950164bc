//! Prime generation and integer factorization.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const SEGMENT: usize = 1 << 16;

/// All primes `<= limit`, ascending. Empty for `limit < 2`.
///
/// Segmented sieve of Eratosthenes over odd numbers.
pub fn primes_up_to(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let root = (limit as f64).sqrt() as u64 + 1;
    let base = simple_sieve(root.min(limit));
    let mut out = Vec::with_capacity(estimate_pi(limit));
    out.push(2);

    // Segment k covers odd numbers lo, lo+2, ..., stored at index (n - lo)/2.
    let mut lo = 3u64;
    let mut seg = vec![true; SEGMENT];
    while lo <= limit {
        let hi = (lo + 2 * SEGMENT as u64 - 2).min(limit | 1);
        let len = ((hi - lo) / 2 + 1) as usize;
        seg[..len].fill(true);
        for &p in base.iter().skip(1) {
            let sq = p * p;
            if sq > hi {
                break;
            }
            let mut start = if sq >= lo {
                sq
            } else {
                let r = lo.div_ceil(p) * p;
                if r % 2 == 0 {
                    r + p
                } else {
                    r
                }
            };
            while start <= hi {
                seg[((start - lo) / 2) as usize] = false;
                start += 2 * p;
            }
        }
        for (i, &is_p) in seg[..len].iter().enumerate() {
            let n = lo + 2 * i as u64;
            if is_p && n <= limit {
                out.push(n);
            }
        }
        lo = hi + 2;
    }
    out
}

fn simple_sieve(limit: u64) -> Vec<u64> {
    let n = limit as usize;
    let mut is = vec![true; n + 1];
    is[0] = false;
    if n >= 1 {
        is[1] = false;
    }
    let mut i = 2;
    while i * i <= n {
        if is[i] {
            let mut j = i * i;
            while j <= n {
                is[j] = false;
                j += i;
            }
        }
        i += 1;
    }
    is.iter()
        .enumerate()
        .filter_map(|(i, &b)| b.then_some(i as u64))
        .collect()
}

fn estimate_pi(n: u64) -> usize {
    if n < 20 {
        return 8;
    }
    let x = n as f64;
    (1.3 * x / x.ln()) as usize
}

/// Deterministic primality for `u64` by trial division; intended for moduli a
/// user hands in, not for bulk work.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = 7u64;
    let mut step = [4u64, 2, 4, 2, 4, 6, 2, 6].iter().cycle();
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += step.next().unwrap();
    }
    true
}

pub fn is_odd_prime(n: u64) -> bool {
    n != 2 && is_prime(n)
}

/// A prime factorization as `(prime, exponent)` pairs with strictly increasing
/// primes.
#[derive(Clone, PartialEq, Eq, Debug, Default, Serialize, Deserialize)]
pub struct Factorization(Vec<(u64, u32)>);

impl Factorization {
    pub fn from_pairs(pairs: Vec<(u64, u32)>) -> Self {
        debug_assert!(pairs.windows(2).all(|w| w[0].0 < w[1].0));
        Factorization(pairs)
    }

    pub fn pairs(&self) -> &[(u64, u32)] {
        &self.0
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.0.iter().map(|&(p, _)| p)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn product(&self) -> u128 {
        self.0
            .iter()
            .map(|&(p, e)| (p as u128).pow(e))
            .product()
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (i, &(p, e)) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " * ")?;
            }
            if e == 1 {
                write!(f, "{p}")?;
            } else {
                write!(f, "{p}^{e}")?;
            }
        }
        Ok(())
    }
}

fn push_factor(out: &mut Vec<(u64, u32)>, p: u64, e: u32) {
    if e > 0 {
        out.push((p, e));
    }
}

/// Complete factorization by trial division up to `sqrt(n)`.
///
/// Cost is `O(sqrt(largest prime factor))`, which is fine for the
/// `(p ± 1)/2`-sized numbers this crate factors.
pub fn factorize(mut n: u64) -> Factorization {
    assert!(n >= 1, "factorize(0)");
    let mut out = Vec::new();
    for p in [2u64, 3, 5] {
        let mut e = 0;
        while n.is_multiple_of(p) {
            n /= p;
            e += 1;
        }
        push_factor(&mut out, p, e);
    }
    let mut d = 7u64;
    let mut step = [4u64, 2, 4, 2, 4, 6, 2, 6].iter().cycle();
    while d.saturating_mul(d) <= n {
        let mut e = 0;
        while n.is_multiple_of(d) {
            n /= d;
            e += 1;
        }
        push_factor(&mut out, d, e);
        d += step.next().unwrap();
    }
    if n > 1 {
        out.push((n, 1));
    }
    Factorization(out)
}

/// A table of primes up to a bound, used for bounded trial division.
#[derive(Clone, Debug)]
pub struct Sieve {
    bound: u64,
    primes: Vec<u64>,
}

impl Sieve {
    pub fn new(bound: u64) -> Self {
        Sieve {
            bound,
            primes: primes_up_to(bound),
        }
    }

    pub fn bound(&self) -> u64 {
        self.bound
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    /// Factorization of `n` by the sieved primes. A remaining cofactor is
    /// accepted as prime only when it is below `bound^2`.
    pub fn factorize(&self, mut n: u64) -> Result<Factorization> {
        assert!(n >= 1, "factorize(0)");
        let mut out = Vec::new();
        for &p in &self.primes {
            if p.saturating_mul(p) > n {
                break;
            }
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            push_factor(&mut out, p, e);
        }
        if n > 1 {
            let b = self.bound as u128;
            if (n as u128) >= b * b {
                return Err(Error::FactoringBoundExceeded {
                    bound: self.bound,
                    cofactor: n.to_string(),
                });
            }
            out.push((n, 1));
        }
        Ok(Factorization(out))
    }

    /// Partial factorization of a big integer: primes `<= bound` with
    /// exponents, plus whatever cofactor is left unfactored.
    pub fn factor_big(&self, n: &BigInt) -> PartialFactorization {
        let mut rest = n.abs();
        let mut found = Vec::new();
        if rest.is_zero() {
            return PartialFactorization {
                factors: found,
                cofactor: rest,
            };
        }
        for &p in &self.primes {
            if let Some(r) = rest.to_u64() {
                // Small enough to finish with the u64 path.
                if p.saturating_mul(p) > r {
                    break;
                }
            }
            let bp = BigInt::from(p);
            let mut e = 0u32;
            loop {
                let (q, r) = rest.div_rem(&bp);
                if !r.is_zero() {
                    break;
                }
                rest = q;
                e += 1;
            }
            push_factor(&mut found, p, e);
        }
        // A cofactor below bound^2 with no sieved factor is prime.
        let b = BigInt::from(self.bound);
        if !rest.is_one() && rest < &b * &b {
            if let Some(r) = rest.to_u64() {
                found.push((r, 1));
                found.sort_unstable();
                rest = BigInt::one();
            }
        }
        PartialFactorization {
            factors: found,
            cofactor: rest,
        }
    }
}

/// Result of bounded trial division of a big integer.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartialFactorization {
    pub factors: Vec<(u64, u32)>,
    /// Unfactored part with no prime factor `<= bound`; `1` when complete.
    pub cofactor: BigInt,
}

impl PartialFactorization {
    pub fn is_complete(&self) -> bool {
        self.cofactor.is_one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_prime_lists() {
        assert_eq!(primes_up_to(10), vec![2, 3, 5, 7]);
        assert_eq!(primes_up_to(2), vec![2]);
        assert!(primes_up_to(1).is_empty());
        assert!(primes_up_to(0).is_empty());
        assert_eq!(primes_up_to(3), vec![2, 3]);
        assert_eq!(primes_up_to(30).len(), 10);
    }

    #[test]
    fn prime_counts_against_simple_sieve() {
        for limit in [100u64, 131_071, 131_072, 131_073, 200_000] {
            assert_eq!(primes_up_to(limit), simple_sieve(limit), "limit {limit}");
        }
        assert_eq!(primes_up_to(1_000_000).len(), 78_498);
    }

    #[test]
    fn factorizations() {
        assert!(factorize(1).is_empty());
        assert_eq!(factorize(36).pairs(), &[(2, 2), (3, 2)]);
        let n = (1u64 << 20) * 3 * 17;
        assert_eq!(factorize(n).pairs(), &[(2, 20), (3, 1), (17, 1)]);
        assert_eq!(factorize(999_983).pairs(), &[(999_983, 1)]);
        let s = Sieve::new(1000);
        assert_eq!(s.factorize(n).unwrap(), factorize(n));
        assert!(matches!(
            s.factorize(1_000_003 * 1_000_033),
            Err(Error::FactoringBoundExceeded { .. })
        ));
    }

    #[test]
    fn big_partial_factorization() {
        let s = Sieve::new(100);
        let n = BigInt::from(2u64.pow(5) * 97 * 101);
        let pf = s.factor_big(&n);
        assert_eq!(pf.factors, vec![(2, 5), (97, 1), (101, 1)]);
        assert!(pf.is_complete());
        let big = BigInt::from(10_007u64) * BigInt::from(10_009u64) * 3;
        let pf = s.factor_big(&big);
        assert_eq!(pf.factors, vec![(3, 1)]);
        assert_eq!(pf.cofactor, BigInt::from(10_007u64 * 10_009));
    }
}
