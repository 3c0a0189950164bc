//! Cyclotomic polynomials and their half-degree images under `z + 1/z`.

use num_bigint::BigInt;

use super::family::{cheb_coeffs, ChebKind};
use super::poly::IntPolynomial;
use crate::arith::factorize;
use crate::error::{Error, Result};

fn divisors(k: u64) -> Vec<u64> {
    let mut ds = vec![1u64];
    for &(p, e) in factorize(k).pairs() {
        let base = ds.clone();
        let mut pe = 1;
        for _ in 0..e {
            pe *= p;
            ds.extend(base.iter().map(|d| d * pe));
        }
    }
    ds.sort_unstable();
    ds
}

fn mobius(n: u64) -> i8 {
    let f = factorize(n);
    if f.pairs().iter().any(|&(_, e)| e > 1) {
        0
    } else if f.pairs().len().is_multiple_of(2) {
        1
    } else {
        -1
    }
}

fn z_pow_minus_one(d: u64) -> IntPolynomial {
    let mut c = vec![BigInt::from(0); d as usize + 1];
    c[0] = BigInt::from(-1);
    c[d as usize] = BigInt::from(1);
    IntPolynomial::new(c)
}

/// The `k`-th cyclotomic polynomial, `k >= 1`.
///
/// Product of `z^d - 1` over `d | k` with `μ(k/d) = 1`, divided exactly by
/// the product over `μ(k/d) = -1`.
pub fn cyclotomic(k: u64) -> IntPolynomial {
    assert!(k >= 1, "cyclotomic(0)");
    let mut num = IntPolynomial::constant(1);
    let mut den = IntPolynomial::constant(1);
    for d in divisors(k) {
        match mobius(k / d) {
            1 => num = &num * &z_pow_minus_one(d),
            -1 => den = &den * &z_pow_minus_one(d),
            _ => {}
        }
    }
    // `den` has leading coefficient 1 and constant term ±1; make it monic.
    num.div_exact(&den).expect("cyclotomic quotient is exact")
}

/// Euler's totient.
pub fn euler_phi(k: u64) -> u64 {
    factorize(k)
        .pairs()
        .iter()
        .fold(k, |acc, &(p, _)| acc / p * (p - 1))
}

/// The chebotomic polynomial `Ψ_k` for `k >= 3`: the monic integer polynomial
/// of degree `φ(k)/2` with `Ψ_k(z + 1/z) = z^{-φ(k)/2} Φ_k(z)`.
///
/// `Φ_k` is palindromic with coefficients `c_0..c_{2m}`, so
/// `z^{-m} Φ_k = c_m + Σ_j c_{m+j} (z^j + z^{-j})` and each `z^j + z^{-j}` is
/// `C_j(x)`.
pub fn chebotomic(k: u64) -> Result<IntPolynomial> {
    if k < 3 {
        return Err(Error::InvalidIndex {
            kind: "chebotomic",
            n: k,
        });
    }
    let phi = cyclotomic(k);
    let m = phi.degree().expect("nonzero") / 2;
    let mut acc = IntPolynomial::constant(phi.coeff(m));
    for j in 1..=m {
        let cj = cheb_coeffs(ChebKind::FirstC, j as u64)?;
        acc = &acc + &cj.scale(&phi.coeff(m + j));
    }
    Ok(acc)
}
