//! Oracles shared by the integration tests. Everything here is computed
//! from definitions by plain recurrences, independently of the library's
//! matrix-power and descent code.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

use chebpart::arith::RationalTrace;
use chebpart::partition::PartitionClass;

/// The first fourteen `C_n` as printed, highest degree first.
pub const GOLDEN_C: [(u64, &str); 14] = [
    (0, "2"),
    (1, "q"),
    (2, "q^2-2"),
    (3, "q^3-3q"),
    (4, "q^4-4q^2+2"),
    (5, "q^5-5q^3+5q"),
    (6, "q^6-6q^4+9q^2-2"),
    (7, "q^7-7q^5+14q^3-7q"),
    (8, "q^8-8q^6+20q^4-16q^2+2"),
    (9, "q^9-9q^7+27q^5-30q^3+9q"),
    (10, "q^10-10q^8+35q^6-50q^4+25q^2-2"),
    (11, "q^11-11q^9+44q^7-77q^5+55q^3-11q"),
    (12, "q^12-12q^10+54q^8-112q^6+105q^4-36q^2+2"),
    (13, "q^13-13q^11+65q^9-156q^7+182q^5-91q^3+13q"),
];

/// The first fourteen `U_n`, `n >= 1`.
pub const GOLDEN_U: [(u64, &str); 14] = [
    (1, "1"),
    (2, "q"),
    (3, "q^2-1"),
    (4, "q^3-2q"),
    (5, "q^4-3q^2+1"),
    (6, "q^5-4q^3+3q"),
    (7, "q^6-5q^4+6q^2-1"),
    (8, "q^7-6q^5+10q^3-4q"),
    (9, "q^8-7q^6+15q^4-10q^2+1"),
    (10, "q^9-8q^7+21q^5-20q^3+5q"),
    (11, "q^10-9q^8+28q^6-35q^4+15q^2-1"),
    (12, "q^11-10q^9+36q^7-56q^5+35q^3-6q"),
    (13, "q^12-11q^10+45q^8-84q^6+70q^4-21q^2+1"),
    (14, "q^13-12q^11+55q^9-120q^7+126q^5-56q^3+7q"),
];

/// Parses `q^3-3q+2` style polynomials into ascending coefficients.
pub fn parse_poly(s: &str) -> Vec<i64> {
    let mut coeffs: Vec<i64> = Vec::new();
    let mut set = |deg: usize, c: i64| {
        if coeffs.len() <= deg {
            coeffs.resize(deg + 1, 0);
        }
        coeffs[deg] += c;
    };
    let mut rest = s;
    while !rest.is_empty() {
        let (sign, body) = match rest.as_bytes()[0] {
            b'-' => (-1, &rest[1..]),
            b'+' => (1, &rest[1..]),
            _ => (1, rest),
        };
        let end = body[1..].find(['+', '-']).map_or(body.len(), |i| i + 1);
        let term = &body[..end];
        rest = &body[end..];
        match term.split_once('q') {
            None => set(0, sign * term.parse::<i64>().expect("constant")),
            Some((c, e)) => {
                let c = if c.is_empty() { 1 } else { c.parse().expect("coefficient") };
                let e = match e.strip_prefix('^') {
                    Some(e) => e.parse().expect("exponent"),
                    None => 1,
                };
                set(e, sign * c);
            }
        }
    }
    coeffs
}

pub fn rat(s: &str) -> RationalTrace {
    s.parse().expect("rational literal")
}

/// `(U_n, C_n)` at `q` by `X_{n+1} = q X_n - X_{n-1}`.
pub fn cu_by_recurrence(n: u64, q: &BigRational) -> (BigRational, BigRational) {
    let two = BigRational::from_integer(BigInt::from(2));
    let (mut u0, mut u1) = (BigRational::zero(), BigRational::one());
    let (mut c0, mut c1) = (two, q.clone());
    for _ in 0..n {
        (u0, u1) = (u1.clone(), q * &u1 - &u0);
        (c0, c1) = (c1.clone(), q * &c1 - &c0);
    }
    (u0, c0)
}

pub fn modinv(a: u64, p: u64) -> Option<u64> {
    let (mut t, mut new_t) = (0i128, 1i128);
    let (mut r, mut new_r) = (p as i128, (a % p) as i128);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    (r == 1).then(|| t.rem_euclid(p as i128) as u64)
}

/// `q mod p`, or `None` when `p` divides the denominator.
pub fn reduce(q: &RationalTrace, p: u64) -> Option<u64> {
    let pb = BigInt::from(p);
    let m = |x: &BigInt| -> u64 {
        let r = ((x % &pb) + &pb) % &pb;
        r.try_into().expect("reduced")
    };
    let d = modinv(m(q.denom()), p)?;
    Some((m(q.numer()) as u128 * d as u128 % p as u128) as u64)
}

fn mulm(a: u64, b: u64, p: u64) -> u64 {
    (a as u128 * b as u128 % p as u128) as u64
}

fn step(q: u64, x1: u64, x0: u64, p: u64) -> u64 {
    (mulm(q, x1, p) + p - x0) % p
}

/// The least `k >= 1` with `U_k(q) = 0 mod p`, by linear scan.
pub fn xi_scan(qm: u64, p: u64) -> u64 {
    let (mut u0, mut u1) = (0u64, 1u64);
    for k in 1..=p + 1 {
        if u1 == 0 {
            return k;
        }
        (u0, u1) = (u1, step(qm, u1, u0, p));
    }
    panic!("U_k never vanishes mod {p}")
}

/// The class of `p` straight from the definitions: odd `n` with
/// `W_n = 0` gives `Π_0`, `V_n = 0` gives `Π_1`, and `C_m = 0` gives
/// `Π_{v2(m)+2}`. Indices run to `2(p+1)`.
pub fn class_by_definition(q: &RationalTrace, p: u64) -> PartitionClass {
    let Some(qm) = reduce(q, p) else {
        return PartitionClass::DenominatorDivisor;
    };
    let n_max = 2 * (p + 1);
    // U by recurrence; V_{2k+1} = U_{k+1} - U_k, W_{2k+1} = U_{k+1} + U_k.
    let mut u = vec![0u64, 1];
    while (u.len() as u64) < n_max + 2 {
        let k = u.len();
        u.push(step(qm, u[k - 1], u[k - 2], p));
    }
    let mut found = Vec::new();
    for k in 0..=(n_max / 2) as usize {
        let v = (u[k + 1] + p - u[k]) % p;
        let w = (u[k + 1] + u[k]) % p;
        if w == 0 {
            found.push(PartitionClass::Pi0);
        }
        if v == 0 {
            found.push(PartitionClass::Pi1);
        }
    }
    let (mut c0, mut c1) = (2 % p, qm);
    for m in 1..=n_max {
        if c1 == 0 {
            found.push(PartitionClass::Pi(m.trailing_zeros() + 2));
        }
        (c0, c1) = (c1, step(qm, c1, c0, p));
    }
    found.sort();
    found.dedup();
    assert_eq!(found.len(), 1, "q = {q}, p = {p}: {found:?}");
    found[0]
}

/// Rationals with small numerator and denominator.
pub fn small_rational() -> impl Strategy<Value = RationalTrace> {
    (-60i64..=60, 1i64..=30).prop_map(|(a, b)| RationalTrace::new(a, b).expect("nonzero"))
}

/// Traces outside `{0, ±1, ±2}`.
pub fn nontrivial_rational() -> impl Strategy<Value = RationalTrace> {
    small_rational().prop_filter("trivial trace", |q| !chebpart::traceclass::is_trivial(q))
}

pub fn odd_prime_below(limit: u64) -> impl Strategy<Value = u64> {
    let primes: Vec<u64> = chebpart::arith::primes_up_to(limit).into_iter().skip(1).collect();
    proptest::sample::select(primes)
}
