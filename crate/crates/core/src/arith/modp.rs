//! Residues modulo an odd prime and the quadratic-residue toolkit.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use super::rational::RationalTrace;
use crate::error::{Error, Result};

/// A residue `value mod modulus`, with `value < modulus`.
///
/// The modulus is expected to be an odd prime below `2^63`; arithmetic is done
/// through `u128` products, so no Montgomery form is needed at this size.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FpElement {
    value: u64,
    modulus: u64,
}

impl FpElement {
    pub fn new(value: u64, modulus: u64) -> Self {
        debug_assert!(modulus >= 2);
        FpElement {
            value: value % modulus,
            modulus,
        }
    }

    pub fn from_i64(value: i64, modulus: u64) -> Self {
        let m = modulus as i128;
        let v = (value as i128).rem_euclid(m) as u64;
        FpElement { value: v, modulus }
    }

    pub fn from_bigint(value: &BigInt, modulus: u64) -> Self {
        let v = value.mod_floor(&BigInt::from(modulus));
        FpElement {
            value: v.to_u64().expect("reduced residue fits in u64"),
            modulus,
        }
    }

    pub fn zero(modulus: u64) -> Self {
        FpElement { value: 0, modulus }
    }

    pub fn one(modulus: u64) -> Self {
        FpElement::new(1, modulus)
    }

    pub fn value(self) -> u64 {
        self.value
    }

    pub fn modulus(self) -> u64 {
        self.modulus
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    pub fn is_one(self) -> bool {
        self.value == 1 % self.modulus
    }

    /// `+1` for the residue 1, `-1` for `p - 1`, `None` otherwise.
    pub fn as_sign(self) -> Option<i8> {
        if self.value == 1 {
            Some(1)
        } else if self.value == self.modulus - 1 {
            Some(-1)
        } else {
            None
        }
    }

    /// Symmetric representative in `(-p/2, p/2]`.
    pub fn centered(self) -> i64 {
        if self.value > self.modulus / 2 {
            self.value as i64 - self.modulus as i64
        } else {
            self.value as i64
        }
    }

    pub fn pow(self, mut e: u64) -> Self {
        let mut base = self;
        let mut acc = FpElement::one(self.modulus);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(self) -> Option<Self> {
        if self.value == 0 {
            return None;
        }
        let (mut a, mut m) = (self.value as i128, self.modulus as i128);
        let (mut x0, mut x1) = (0i128, 1i128);
        let m0 = m;
        while a > 1 {
            let q = a / m;
            (a, m) = (m, a % m);
            (x0, x1) = (x1 - q * x0, x0);
        }
        Some(FpElement {
            value: x1.rem_euclid(m0) as u64,
            modulus: self.modulus,
        })
    }

    /// Legendre symbol of this residue.
    pub fn legendre(self) -> i8 {
        jacobi(self.value, self.modulus)
    }

    pub fn sqrt(self) -> Option<Self> {
        sqrt_mod(self)
    }
}

impl fmt::Debug for FpElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod {}", self.value, self.modulus)
    }
}

impl fmt::Display for FpElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Add for FpElement {
    type Output = FpElement;
    fn add(self, rhs: FpElement) -> FpElement {
        debug_assert_eq!(self.modulus, rhs.modulus);
        let s = self.value as u128 + rhs.value as u128;
        let m = self.modulus as u128;
        FpElement {
            value: if s >= m { (s - m) as u64 } else { s as u64 },
            modulus: self.modulus,
        }
    }
}

impl Sub for FpElement {
    type Output = FpElement;
    fn sub(self, rhs: FpElement) -> FpElement {
        debug_assert_eq!(self.modulus, rhs.modulus);
        let v = if self.value >= rhs.value {
            self.value - rhs.value
        } else {
            self.modulus - (rhs.value - self.value)
        };
        FpElement {
            value: v,
            modulus: self.modulus,
        }
    }
}

impl Mul for FpElement {
    type Output = FpElement;
    fn mul(self, rhs: FpElement) -> FpElement {
        debug_assert_eq!(self.modulus, rhs.modulus);
        FpElement {
            value: ((self.value as u128 * rhs.value as u128) % self.modulus as u128) as u64,
            modulus: self.modulus,
        }
    }
}

impl Neg for FpElement {
    type Output = FpElement;
    fn neg(self) -> FpElement {
        FpElement {
            value: if self.value == 0 {
                0
            } else {
                self.modulus - self.value
            },
            modulus: self.modulus,
        }
    }
}

/// Jacobi symbol `(a | n)` for odd `n`.
pub fn jacobi(a: u64, n: u64) -> i8 {
    debug_assert!(n % 2 == 1);
    let mut a = a % n;
    let mut n = n;
    let mut t = 1i8;
    while a != 0 {
        while a.is_multiple_of(2) {
            a /= 2;
            let r = n % 8;
            if r == 3 || r == 5 {
                t = -t;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            t = -t;
        }
        a %= n;
    }
    if n == 1 {
        t
    } else {
        0
    }
}

/// `a * b^{-1} mod p` for `q = a/b`.
pub fn rational_mod(q: &RationalTrace, p: u64) -> Result<FpElement> {
    let den = FpElement::from_bigint(q.denom(), p);
    let inv = den.inv().ok_or_else(|| Error::DenominatorDivisible {
        q: q.to_string(),
        p,
    })?;
    Ok(FpElement::from_bigint(q.numer(), p) * inv)
}

/// Legendre symbol of a rational `q = a/b`: the symbol of `ab` mod `p`.
pub fn legendre_rational(q: &RationalTrace, p: u64) -> Result<i8> {
    let b = FpElement::from_bigint(q.denom(), p);
    if b.is_zero() {
        return Err(Error::DenominatorDivisible {
            q: q.to_string(),
            p,
        });
    }
    let a = FpElement::from_bigint(q.numer(), p);
    Ok((a * b).legendre())
}

/// A square root of `a`, choosing the smaller of the two representatives.
///
/// Tonelli–Shanks; `None` when `a` is a non-residue.
pub fn sqrt_mod(a: FpElement) -> Option<FpElement> {
    let p = a.modulus();
    if a.is_zero() {
        return Some(a);
    }
    if p == 2 {
        return Some(a);
    }
    if a.legendre() != 1 {
        return None;
    }
    let root = if p % 4 == 3 {
        a.pow((p + 1) / 4)
    } else {
        tonelli_shanks(a)
    };
    debug_assert_eq!(root * root, a);
    let other = -root;
    Some(if other.value() < root.value() {
        other
    } else {
        root
    })
}

fn tonelli_shanks(a: FpElement) -> FpElement {
    let p = a.modulus();
    let mut q = p - 1;
    let mut s = 0u32;
    while q.is_multiple_of(2) {
        q /= 2;
        s += 1;
    }
    let z = (2..p)
        .map(|z| FpElement::new(z, p))
        .find(|z| z.legendre() == -1)
        .expect("odd prime has a non-residue");
    let mut m = s;
    let mut c = z.pow(q);
    let mut t = a.pow(q);
    let mut r = a.pow(q.div_ceil(2));
    while !t.is_one() {
        let mut i = 0u32;
        let mut t2 = t;
        while !t2.is_one() {
            t2 = t2 * t2;
            i += 1;
        }
        let b = c.pow(1u64 << (m - i - 1));
        m = i;
        c = b * b;
        t = t * c;
        r = r * b;
    }
    r
}

/// Decomposes `n = 2^s * odd_part`.
pub fn two_adic_valuation(n: u64) -> (u32, u64) {
    assert!(n >= 1, "two_adic_valuation of 0");
    let s = n.trailing_zeros();
    (s, n >> s)
}

/// 2-adic valuation of a nonzero big integer.
pub fn two_adic_valuation_big(n: &BigInt) -> u32 {
    n.trailing_zeros().expect("two_adic_valuation of 0") as u32
}
