//! The four Chebyshev families, normalized so that `C_n(2) = 2` and
//! `U_n(2) = n`.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::poly::IntPolynomial;
use crate::arith::{FpElement, RationalTrace};
use crate::error::{Error, Result};

/// `C` is the trace family, `U` the power-expansion family; `V` and `W` live
/// on odd indices only.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ChebKind {
    FirstC,
    SecondU,
    ThirdV,
    FourthW,
}

impl ChebKind {
    pub const ALL: [ChebKind; 4] = [
        ChebKind::FirstC,
        ChebKind::SecondU,
        ChebKind::ThirdV,
        ChebKind::FourthW,
    ];

    pub fn symbol(self) -> char {
        match self {
            ChebKind::FirstC => 'C',
            ChebKind::SecondU => 'U',
            ChebKind::ThirdV => 'V',
            ChebKind::FourthW => 'W',
        }
    }

    fn check_index(self, n: u64) -> Result<()> {
        match self {
            ChebKind::ThirdV | ChebKind::FourthW if n.is_multiple_of(2) => Err(Error::InvalidIndex {
                kind: match self {
                    ChebKind::ThirdV => "V",
                    _ => "W",
                },
                n,
            }),
            _ => Ok(()),
        }
    }
}

impl fmt::Display for ChebKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

fn binom(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

fn signed(s: u64, v: BigInt) -> BigInt {
    if s % 2 == 1 {
        -v
    } else {
        v
    }
}

fn u_coeffs(n: u64) -> IntPolynomial {
    // U_{m+1} has coefficient (-1)^s binom(m-s, s) at q^{m-2s}.
    if n == 0 {
        return IntPolynomial::zero();
    }
    let m = n - 1;
    let mut c = vec![BigInt::zero(); m as usize + 1];
    for s in 0..=m / 2 {
        c[(m - 2 * s) as usize] = signed(s, binom(m - s, s));
    }
    IntPolynomial::new(c)
}

fn c_coeffs(n: u64) -> IntPolynomial {
    // (-1)^s n/(n-s) binom(n-s, s) at q^{n-2s}; C_0 = 2.
    if n == 0 {
        return IntPolynomial::constant(2);
    }
    let mut c = vec![BigInt::zero(); n as usize + 1];
    for s in 0..=n / 2 {
        let v = binom(n - s, s) * n / (n - s);
        c[(n - 2 * s) as usize] = signed(s, v);
    }
    IntPolynomial::new(c)
}

/// Exact integer coefficient vector of the `n`-th polynomial of `kind`.
pub fn cheb_coeffs(kind: ChebKind, n: u64) -> Result<IntPolynomial> {
    kind.check_index(n)?;
    Ok(match kind {
        ChebKind::FirstC => c_coeffs(n),
        ChebKind::SecondU => u_coeffs(n),
        ChebKind::ThirdV => {
            let k = (n - 1) / 2;
            &u_coeffs(k + 1) - &u_coeffs(k)
        }
        ChebKind::FourthW => {
            let k = (n - 1) / 2;
            &u_coeffs(k + 1) + &u_coeffs(k)
        }
    })
}

/// A 2x2 matrix over any ring whose elements are cheap enough to clone.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Mat2<T>(pub [[T; 2]; 2]);

impl<T> Mat2<T>
where
    T: Clone + Add<Output = T> + Sub<Output = T> + Mul<Output = T>,
{
    pub fn mul(&self, o: &Mat2<T>) -> Mat2<T> {
        let a = &self.0;
        let b = &o.0;
        let e = |i: usize, j: usize| {
            a[i][0].clone() * b[0][j].clone() + a[i][1].clone() * b[1][j].clone()
        };
        Mat2([[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]])
    }

    /// `self^n` by left-to-right square-and-multiply.
    pub fn pow(&self, n: u64, identity: Mat2<T>) -> Mat2<T> {
        let mut acc = identity;
        if n == 0 {
            return acc;
        }
        for bit in (0..64 - n.leading_zeros()).rev() {
            acc = acc.mul(&acc);
            if (n >> bit) & 1 == 1 {
                acc = acc.mul(self);
            }
        }
        acc
    }
}

/// Row 2 of `A^k` is `[-U_k, U_{k+1}]`; from it every family follows.
fn eval_generic<T>(kind: ChebKind, n: u64, q: T, zero: T, one: T) -> T
where
    T: Clone + Add<Output = T> + Sub<Output = T> + Mul<Output = T>,
{
    let a = Mat2([[zero.clone(), one.clone()], [zero.clone() - one.clone(), q]]);
    let id = Mat2([[one.clone(), zero.clone()], [zero.clone(), one.clone()]]);
    match kind {
        ChebKind::SecondU => a.pow(n, id).0[0][1].clone(),
        ChebKind::FirstC => {
            let m = a.pow(n, id).0;
            m[0][0].clone() + m[1][1].clone()
        }
        ChebKind::ThirdV | ChebKind::FourthW => {
            let m = a.pow((n - 1) / 2, id).0;
            let (uk, uk1) = (zero - m[1][0].clone(), m[1][1].clone());
            if kind == ChebKind::ThirdV {
                uk1 - uk
            } else {
                uk1 + uk
            }
        }
    }
}

/// Exact value at a rational argument via powers of `[[0,1],[-1,q]]`.
pub fn cheb_eval(kind: ChebKind, n: u64, q: &RationalTrace) -> Result<RationalTrace> {
    kind.check_index(n)?;
    Ok(eval_generic(
        kind,
        n,
        q.clone(),
        RationalTrace::zero(),
        RationalTrace::one(),
    ))
}

/// Value mod `p`; `O(log n)` matrix products, so `n` may be enormous.
pub fn cheb_eval_mod(kind: ChebKind, n: u64, q: FpElement) -> Result<FpElement> {
    kind.check_index(n)?;
    let p = q.modulus();
    Ok(eval_generic(
        kind,
        n,
        q,
        FpElement::zero(p),
        FpElement::one(p),
    ))
}

/// Shorthands for the common exact evaluations; they panic on a bad index.
pub fn c(n: u64, q: &RationalTrace) -> RationalTrace {
    cheb_eval(ChebKind::FirstC, n, q).expect("any n is valid for C")
}

pub fn u(n: u64, q: &RationalTrace) -> RationalTrace {
    cheb_eval(ChebKind::SecondU, n, q).expect("any n is valid for U")
}

pub fn v(n: u64, q: &RationalTrace) -> RationalTrace {
    cheb_eval(ChebKind::ThirdV, n, q).expect("V needs odd n")
}

pub fn w(n: u64, q: &RationalTrace) -> RationalTrace {
    cheb_eval(ChebKind::FourthW, n, q).expect("W needs odd n")
}
