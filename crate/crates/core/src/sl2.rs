//! Unimodular 2x2 matrices over F_p, the Euler criterion in SL(2) and the
//! index of appearance.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::{factorize, legendre_rational, rational_mod, FpElement, RationalTrace};
use crate::cheb::{cheb_eval_mod, ChebKind};
use crate::error::{Error, Result};

/// A 2x2 matrix mod `p`, row-major.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Mat2Fp {
    pub entries: [[FpElement; 2]; 2],
}

impl Mat2Fp {
    pub fn new(a11: FpElement, a12: FpElement, a21: FpElement, a22: FpElement) -> Self {
        Mat2Fp {
            entries: [[a11, a12], [a21, a22]],
        }
    }

    pub fn identity(p: u64) -> Self {
        Self::scalar(FpElement::one(p))
    }

    pub fn scalar(s: FpElement) -> Self {
        let z = FpElement::zero(s.modulus());
        Self::new(s, z, z, s)
    }

    pub fn modulus(&self) -> u64 {
        self.entries[0][0].modulus()
    }

    pub fn get(&self, i: usize, j: usize) -> FpElement {
        self.entries[i][j]
    }

    pub fn det(&self) -> FpElement {
        let e = &self.entries;
        e[0][0] * e[1][1] - e[0][1] * e[1][0]
    }

    pub fn trace(&self) -> FpElement {
        self.entries[0][0] + self.entries[1][1]
    }

    pub fn mul(&self, o: &Mat2Fp) -> Mat2Fp {
        let a = &self.entries;
        let b = &o.entries;
        let e = |i: usize, j: usize| a[i][0] * b[0][j] + a[i][1] * b[1][j];
        Mat2Fp::new(e(0, 0), e(0, 1), e(1, 0), e(1, 1))
    }

    /// The scalar `s` when the matrix is `s I`.
    pub fn as_scalar(&self) -> Option<FpElement> {
        let e = &self.entries;
        (e[0][1].is_zero() && e[1][0].is_zero() && e[0][0] == e[1][1]).then_some(e[0][0])
    }
}

impl fmt::Debug for Mat2Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let e = &self.entries;
        write!(
            f,
            "[[{}, {}], [{}, {}]] mod {}",
            e[0][0],
            e[0][1],
            e[1][0],
            e[1][1],
            self.modulus()
        )
    }
}

/// `[[0, 1], [-1, q]]` mod `p`.
pub fn companion_matrix(q: FpElement) -> Mat2Fp {
    let p = q.modulus();
    Mat2Fp::new(FpElement::zero(p), FpElement::one(p), -FpElement::one(p), q)
}

/// `a^n` by binary exponentiation.
pub fn mat_pow(a: &Mat2Fp, n: u64) -> Mat2Fp {
    let mut acc = Mat2Fp::identity(a.modulus());
    if n == 0 {
        return acc;
    }
    for bit in (0..64 - n.leading_zeros()).rev() {
        acc = acc.mul(&acc);
        if (n >> bit) & 1 == 1 {
            acc = acc.mul(a);
        }
    }
    acc
}

pub(crate) fn check_odd_prime(p: u64) -> Result<()> {
    if p < 3 || p.is_multiple_of(2) {
        Err(Error::NotOddPrime(p))
    } else {
        Ok(())
    }
}

/// `δ = q^2 - 4`.
pub fn delta(q: &RationalTrace) -> RationalTrace {
    q * q - RationalTrace::from_int(4)
}

/// Outcome of the Euler criterion check. Both sides are computed
/// independently: the matrix power, and a Legendre symbol (or `q/2` in the
/// degenerate case).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EulerCheck {
    pub delta_symbol: i8,
    pub exponent: u64,
    /// The scalar `s` with `A^exponent = s I`, when the power is scalar.
    pub scalar: Option<FpElement>,
    /// `(q+2 | p)` as a residue, or `q/2 mod p` when `(δ|p) = 0`.
    pub expected: FpElement,
    pub verified: bool,
}

pub fn euler_criterion(q: &RationalTrace, p: u64) -> Result<EulerCheck> {
    check_odd_prime(p)?;
    let qm = rational_mod(q, p)?;
    let ds = legendre_rational(&delta(q), p)?;
    let (exponent, expected) = if ds == 0 {
        let half = rational_mod(&(q / RationalTrace::from_int(2)), p)?;
        (p, half)
    } else {
        let l = legendre_rational(&(q + RationalTrace::from_int(2)), p)?;
        ((p as i64 - ds as i64) as u64 / 2, FpElement::from_i64(l as i64, p))
    };
    let scalar = mat_pow(&companion_matrix(qm), exponent).as_scalar();
    Ok(EulerCheck {
        delta_symbol: ds,
        exponent,
        scalar,
        expected,
        verified: scalar == Some(expected),
    })
}

/// One line of the Chebyshev-at-`p` congruences.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CongruenceLine {
    pub name: String,
    pub lhs: FpElement,
    pub rhs: FpElement,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CongruenceReport {
    pub q: RationalTrace,
    pub p: u64,
    pub lines: Vec<CongruenceLine>,
}

impl CongruenceReport {
    pub fn all_hold(&self) -> bool {
        self.lines.iter().all(|l| l.holds)
    }
}

/// `C_p ≡ q`, `V_p ≡ (q+2|p)`, `W_p ≡ (q-2|p)`, `U_p ≡ (δ|p)` mod `p`.
pub fn congruence_suite(q: &RationalTrace, p: u64) -> Result<CongruenceReport> {
    check_odd_prime(p)?;
    let qm = rational_mod(q, p)?;
    let two = RationalTrace::from_int(2);
    let sym = |x: RationalTrace| -> Result<FpElement> {
        Ok(FpElement::from_i64(legendre_rational(&x, p)? as i64, p))
    };
    let rows = [
        ("C_p = q", ChebKind::FirstC, qm),
        ("V_p = (q+2|p)", ChebKind::ThirdV, sym(q + &two)?),
        ("W_p = (q-2|p)", ChebKind::FourthW, sym(q - &two)?),
        ("U_p = (q^2-4|p)", ChebKind::SecondU, sym(delta(q))?),
    ];
    let mut lines = Vec::with_capacity(4);
    for (name, kind, rhs) in rows {
        let lhs = cheb_eval_mod(kind, p, qm)?;
        lines.push(CongruenceLine {
            name: name.to_string(),
            lhs,
            rhs,
            holds: lhs == rhs,
        });
    }
    Ok(CongruenceReport {
        q: q.clone(),
        p,
        lines,
    })
}

/// The least `ξ >= 1` with `U_ξ(q) ≡ 0 mod p`, together with the scalar
/// `A^ξ = sign_at_xi · I`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AppearanceIndex {
    pub xi: u64,
    pub sign_at_xi: i8,
    pub delta_symbol: i8,
}

/// Computes `ξ` by descent inside the divisors of `(p - (δ|p))/2`, where
/// `A` is already scalar; `ξ = p` when `(δ|p) = 0`.
pub fn appearance_index(q: &RationalTrace, p: u64) -> Result<AppearanceIndex> {
    check_odd_prime(p)?;
    let qm = rational_mod(q, p)?;
    let ds = legendre_rational(&delta(q), p)?;
    appearance_index_mod(qm, ds)
}

/// As [`appearance_index`] with `q` already reduced and `(δ|p)` known.
pub fn appearance_index_mod(qm: FpElement, delta_symbol: i8) -> Result<AppearanceIndex> {
    let p = qm.modulus();
    let a = companion_matrix(qm);
    let xi = if delta_symbol == 0 {
        p
    } else {
        let m = (p as i64 - delta_symbol as i64) as u64 / 2;
        let mut d = m;
        for r in factorize(m).primes() {
            while d.is_multiple_of(r) && mat_pow(&a, d / r).as_scalar().is_some() {
                d /= r;
            }
        }
        d
    };
    let at = mat_pow(&a, xi);
    let sign = at
        .as_scalar()
        .and_then(FpElement::as_sign)
        .ok_or_else(|| {
            Error::InvariantViolation(format!("A^{xi} is not ±I mod {p}: {at:?}"))
        })?;
    Ok(AppearanceIndex {
        xi,
        sign_at_xi: sign,
        delta_symbol,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cheb::cheb_eval_mod;

    fn r(s: &str) -> RationalTrace {
        s.parse().unwrap()
    }

    #[test]
    fn companion_and_powers() {
        let a = companion_matrix(FpElement::new(3, 11));
        assert_eq!(a.get(1, 0).value(), 10);
        assert!(a.det().is_one());
        assert_eq!(mat_pow(&a, 0), Mat2Fp::identity(11));
        assert_eq!(mat_pow(&a, 5), Mat2Fp::identity(11));
        let b = companion_matrix(FpElement::new(3, 5));
        assert_eq!(mat_pow(&b, 5).as_scalar().unwrap().value(), 4);
    }

    #[test]
    fn power_matches_chebyshev_expansion() {
        let p = 1_000_003;
        let qm = FpElement::new(777, p);
        let a = companion_matrix(qm);
        for n in [1u64, 2, 17, 1000, 999_999] {
            let an = mat_pow(&a, n);
            let un = cheb_eval_mod(ChebKind::SecondU, n, qm).unwrap();
            let un1 = cheb_eval_mod(ChebKind::SecondU, n - 1, qm).unwrap();
            assert_eq!(an.get(0, 1), un);
            assert_eq!(an.get(0, 0), -un1);
            assert_eq!(an.get(1, 1), un * qm - un1);
        }
    }

    #[test]
    fn euler_examples() {
        let e = euler_criterion(&r("3"), 11).unwrap();
        assert_eq!((e.delta_symbol, e.exponent, e.verified), (1, 5, true));
        let e = euler_criterion(&r("3"), 5).unwrap();
        assert_eq!((e.delta_symbol, e.exponent, e.verified), (0, 5, true));
        assert_eq!(e.scalar.unwrap().value(), 4);
        let e = euler_criterion(&r("0"), 5).unwrap();
        assert_eq!((e.delta_symbol, e.exponent, e.verified), (1, 2, true));
        assert!(euler_criterion(&r("1/5"), 5).is_err());
    }

    #[test]
    fn congruence_examples() {
        assert!(congruence_suite(&r("3"), 11).unwrap().all_hold());
        let rep = congruence_suite(&r("2"), 13).unwrap();
        assert!(rep.all_hold());
        assert!(rep.lines[2].rhs.is_zero());
        let rep = congruence_suite(&r("0"), 7).unwrap();
        assert!(rep.lines[1].lhs.is_one());
    }

    #[test]
    fn appearance_examples() {
        let ai = |q: &str, p| appearance_index(&r(q), p).unwrap();
        assert_eq!(ai("3", 5), AppearanceIndex { xi: 5, sign_at_xi: -1, delta_symbol: 0 });
        assert_eq!(ai("3", 7), AppearanceIndex { xi: 4, sign_at_xi: -1, delta_symbol: -1 });
        assert_eq!(ai("3", 11), AppearanceIndex { xi: 5, sign_at_xi: 1, delta_symbol: 1 });
        assert_eq!(appearance_index(&r("1"), 2), Err(Error::NotOddPrime(2)));
    }
}
