use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// An exact rational number `a/b` in lowest terms with `b >= 1`.
///
/// This is the trace parameter `q` of the partition; it is also used as the
/// general exact scalar throughout the crate.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct RationalTrace(BigRational);

impl RationalTrace {
    pub fn new(numerator: impl Into<BigInt>, denominator: impl Into<BigInt>) -> Result<Self> {
        let d = denominator.into();
        if d.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(RationalTrace(BigRational::new(numerator.into(), d)))
    }

    pub fn from_int(n: impl Into<BigInt>) -> Self {
        RationalTrace(BigRational::from_integer(n.into()))
    }

    pub fn from_ratio(r: BigRational) -> Self {
        RationalTrace(r)
    }

    pub fn zero() -> Self {
        Self::from_int(0)
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn as_ratio(&self) -> &BigRational {
        &self.0
    }

    pub fn into_ratio(self) -> BigRational {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn abs(&self) -> Self {
        RationalTrace(self.0.abs())
    }

    pub fn recip(&self) -> Self {
        RationalTrace(self.0.recip())
    }

    pub fn pow(&self, e: i32) -> Self {
        RationalTrace(num_traits::Pow::pow(&self.0, e))
    }

    pub fn square(&self) -> Self {
        self * self
    }

    /// The nonnegative rational square root, when one exists.
    pub fn sqrt(&self) -> Option<Self> {
        if self.0.is_negative() {
            return None;
        }
        let n = exact_isqrt(self.numer())?;
        let d = exact_isqrt(self.denom())?;
        Some(RationalTrace(BigRational::new(n, d)))
    }

    pub fn is_square(&self) -> bool {
        is_square_rational(self)
    }

    /// Lossy conversion, for display only.
    pub fn to_f64(&self) -> f64 {
        num_traits::ToPrimitive::to_f64(&self.0).unwrap_or(f64::NAN)
    }
}

fn exact_isqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    if &(&r * &r) == n {
        Some(r)
    } else {
        None
    }
}

/// True iff `q = r^2` for some rational `r`.
pub fn is_square_rational(q: &RationalTrace) -> bool {
    !q.is_negative() && exact_isqrt(q.numer()).is_some() && exact_isqrt(q.denom()).is_some()
}

/// True iff the integer `n` is a perfect square (negative values never are).
pub fn is_square_int(n: &BigInt) -> bool {
    exact_isqrt(n).is_some()
}

impl FromStr for RationalTrace {
    type Err = Error;

    /// Accepts `a` or `a/b` with an optional leading sign on `a`. Whitespace
    /// anywhere is rejected.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::ParseRational(s.to_string());
        let digits = |t: &str, signed: bool| -> Result<BigInt> {
            let body = if signed {
                t.strip_prefix(['-', '+']).unwrap_or(t)
            } else {
                t
            };
            if body.is_empty() || !body.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            t.parse::<BigInt>().map_err(|_| bad())
        };
        match s.split_once('/') {
            None => Ok(Self::from_int(digits(s, true)?)),
            Some((a, b)) => {
                let n = digits(a, true)?;
                let d = digits(b, false)?;
                if d.is_zero() {
                    return Err(Error::ZeroDenominator);
                }
                Self::new(n, d)
            }
        }
    }
}

impl fmt::Display for RationalTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl fmt::Debug for RationalTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Serialize for RationalTrace {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for RationalTrace {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl From<i64> for RationalTrace {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl From<BigInt> for RationalTrace {
    fn from(n: BigInt) -> Self {
        Self::from_int(n)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident) => {
        impl $tr<&RationalTrace> for &RationalTrace {
            type Output = RationalTrace;
            fn $m(self, rhs: &RationalTrace) -> RationalTrace {
                RationalTrace((&self.0).$m(&rhs.0))
            }
        }
        impl $tr<RationalTrace> for RationalTrace {
            type Output = RationalTrace;
            fn $m(self, rhs: RationalTrace) -> RationalTrace {
                RationalTrace(self.0.$m(rhs.0))
            }
        }
        impl $tr<&RationalTrace> for RationalTrace {
            type Output = RationalTrace;
            fn $m(self, rhs: &RationalTrace) -> RationalTrace {
                RationalTrace(self.0.$m(&rhs.0))
            }
        }
        impl $tr<RationalTrace> for &RationalTrace {
            type Output = RationalTrace;
            fn $m(self, rhs: RationalTrace) -> RationalTrace {
                RationalTrace((&self.0).$m(rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl Neg for RationalTrace {
    type Output = RationalTrace;
    fn neg(self) -> RationalTrace {
        RationalTrace(-self.0)
    }
}

impl Neg for &RationalTrace {
    type Output = RationalTrace;
    fn neg(self) -> RationalTrace {
        RationalTrace(-&self.0)
    }
}

impl Zero for RationalTrace {
    fn zero() -> Self {
        RationalTrace(BigRational::zero())
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

impl One for RationalTrace {
    fn one() -> Self {
        RationalTrace(BigRational::one())
    }
}

/// `gcd(|a|, |b|)` over big integers.
pub fn big_gcd(a: &BigInt, b: &BigInt) -> BigInt {
    a.gcd(b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(s: &str) -> RationalTrace {
        s.parse().unwrap()
    }

    #[test]
    fn parse_and_canonicalize() {
        assert_eq!(r("6/4").to_string(), "3/2");
        assert_eq!(r("-5/2").to_string(), "-5/2");
        assert_eq!(r("+7").to_string(), "7");
        assert_eq!(r("0/9").to_string(), "0");
        assert_eq!(r("0").denom(), &BigInt::from(1));
        assert_eq!(r("-4/2"), r("-2"));
    }

    #[test]
    fn parse_rejects_malformed() {
        for s in ["", " 1", "1 ", "1/ 2", "a", "1/-2", "1//2", "--1", "1/", "/2", "1.5"] {
            assert!(s.parse::<RationalTrace>().is_err(), "accepted {s:?}");
        }
        assert_eq!("3/0".parse::<RationalTrace>(), Err(Error::ZeroDenominator));
    }

    #[test]
    fn square_tests() {
        assert!(is_square_rational(&r("9/4")));
        assert!(!is_square_rational(&r("2")));
        assert!(!is_square_rational(&r("32/5")));
        assert!(!is_square_rational(&r("-4")));
        assert!(is_square_rational(&r("0")));
        assert_eq!(r("64/25").sqrt(), Some(r("8/5")));
    }

    #[test]
    fn serde_is_string() {
        let q = r("-2/3");
        let s = serde_json::to_string(&q).unwrap();
        assert_eq!(s, "\"-2/3\"");
        assert_eq!(serde_json::from_str::<RationalTrace>(&s).unwrap(), q);
    }
}
