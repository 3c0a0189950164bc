//! Exact checks of the Chebyshev identity list and the chebotomic
//! factorizations.
//!
//! Every check is an exact rational (or integer polynomial) equality. A failure
//! is an [`Error::IdentityViolation`] carrying the first failing instance.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::chebotomic::chebotomic;
use super::family::{c, cheb_coeffs, u, v, w, ChebKind};
use super::poly::IntPolynomial;
use crate::arith::RationalTrace;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum IdentityId {
    /// `C_{kl} = C_k(C_l) = C_l(C_k)`.
    F1,
    /// `U_{kl} = U_k U_l(C_k)`.
    F2,
    /// `U_{k+1} C_k - C_{k+1} U_k = 2` and `W_n V_{n-2} - V_n W_{n-2} = 2`.
    F3,
    /// `U_n = V_n W_n` and `U_{2k} = C_k U_k`.
    F4,
    /// `C_n - 2 = (q-2) W_n^2` and `C_n + 2 = (q+2) V_n^2`.
    F5,
    /// `W_{nm} = W_n W_m(C_n)`, `V_{nm} = V_m(C_n) V_n = V_m V_n(C_m)`.
    F6,
    /// `C_n(q) = q V_n(q^2-2)` and `U_n(q) = W_n(q^2-2)`.
    F7,
    /// `x U_n(q) = (-1)^{(n-1)/2} C_n(x)` for `q^2 + x^2 = 4`, and its
    /// companion for `√(2±q)`, both checked at rational points and as
    /// polynomial identities in `q`.
    F8,
    /// `C_k^2 + (4 - q^2) U_k^2 = 4`.
    F9,
    /// Closed forms of all four families at `q = z + 1/z`.
    Substitution,
    /// `W_n = ∏ Ψ_d`, `V_n = ∏ Ψ_{2d}` over `1 < d | n`, and
    /// `C_{2^l n} = ∏ Ψ_{2^{l+2} d}` over `d | n`.
    Factorization,
}

impl IdentityId {
    pub const ALL: [IdentityId; 11] = [
        IdentityId::F1,
        IdentityId::F2,
        IdentityId::F3,
        IdentityId::F4,
        IdentityId::F5,
        IdentityId::F6,
        IdentityId::F7,
        IdentityId::F8,
        IdentityId::F9,
        IdentityId::Substitution,
        IdentityId::Factorization,
    ];
}

impl fmt::Display for IdentityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// Index ranges and sample points for [`verify_identity`].
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct IdentityRanges {
    /// Largest odd index `n, m`.
    pub max_odd: u64,
    /// Largest general index `k, l`.
    pub max_k: u64,
    /// Largest `l` in `C_{2^l n}` factorizations.
    pub max_l: u32,
    /// Rational sample points. Also used as `t` in `t + 1/t` and as the
    /// circle parameter.
    pub samples: Vec<RationalTrace>,
}

impl Default for IdentityRanges {
    fn default() -> Self {
        let samples = [
            "1/2", "-3/7", "5/3", "7", "-11/4", "2/9", "13/5", "-1/6", "9/8", "3",
        ]
        .iter()
        .map(|s| s.parse().expect("literal"))
        .collect();
        IdentityRanges {
            max_odd: 15,
            max_k: 10,
            max_l: 3,
            samples,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub identity: IdentityId,
    pub instances: usize,
}

struct Checker {
    id: IdentityId,
    count: usize,
}

impl Checker {
    fn check(&mut self, ok: bool, instance: impl FnOnce() -> String) -> Result<()> {
        self.count += 1;
        if ok {
            Ok(())
        } else {
            Err(Error::IdentityViolation {
                identity: self.id.to_string(),
                instance: instance(),
            })
        }
    }
}

fn odd_range(max: u64) -> impl Iterator<Item = u64> {
    (1..=max).step_by(2)
}

fn sign_half(n: u64) -> RationalTrace {
    if ((n - 1) / 2).is_multiple_of(2) {
        RationalTrace::one()
    } else {
        -RationalTrace::one()
    }
}

fn q2(q: &RationalTrace) -> RationalTrace {
    q * q - RationalTrace::from_int(2)
}

fn t_plus_inverse(t: &RationalTrace) -> Option<RationalTrace> {
    (!t.is_zero()).then(|| t + t.recip())
}

/// The rational point `(2(1-t^2)/(1+t^2), 4t/(1+t^2))` on `q^2 + x^2 = 4`.
pub fn circle_point(t: &RationalTrace) -> (RationalTrace, RationalTrace) {
    let one = RationalTrace::one();
    let t2 = t * t;
    let den = &one + &t2;
    let q = RationalTrace::from_int(2) * (&one - &t2) / &den;
    let x = RationalTrace::from_int(4) * t / &den;
    (q, x)
}

/// For an odd polynomial `f`, the polynomial `g` with `f(x) = x g(x^2)`; for an
/// even one, `g` with `f(x) = g(x^2)`.
fn halve_parity(f: &IntPolynomial, odd: bool) -> IntPolynomial {
    let start = usize::from(odd);
    IntPolynomial::new(
        f.coeffs()
            .iter()
            .skip(start)
            .step_by(2)
            .cloned()
            .collect(),
    )
}

fn product(ds: impl Iterator<Item = u64>) -> Result<IntPolynomial> {
    let mut acc = IntPolynomial::constant(1);
    for d in ds {
        acc = &acc * &chebotomic(d)?;
    }
    Ok(acc)
}

/// Checks every instance of one identity over the given ranges.
pub fn verify_identity(id: IdentityId, r: &IdentityRanges) -> Result<IdentityReport> {
    let mut ck = Checker { id, count: 0 };
    let two = RationalTrace::from_int(2);
    let four = RationalTrace::from_int(4);
    match id {
        IdentityId::F1 => {
            for q in &r.samples {
                for k in 1..=r.max_k {
                    for l in 1..=r.max_k {
                        let lhs = c(k * l, q);
                        let a = c(k, &c(l, q));
                        let b = c(l, &c(k, q));
                        ck.check(lhs == a && a == b, || format!("k={k}, l={l}, q={q}"))?;
                    }
                }
            }
        }
        IdentityId::F2 => {
            for q in &r.samples {
                for k in 1..=r.max_k {
                    for l in 1..=r.max_k {
                        let ok = u(k * l, q) == u(k, q) * u(l, &c(k, q));
                        ck.check(ok, || format!("k={k}, l={l}, q={q}"))?;
                    }
                }
            }
        }
        IdentityId::F3 => {
            for q in &r.samples {
                for k in 0..=r.max_k {
                    let ok = u(k + 1, q) * c(k, q) - c(k + 1, q) * u(k, q) == two;
                    ck.check(ok, || format!("k={k}, q={q}"))?;
                }
                for n in odd_range(r.max_odd).skip(1) {
                    let ok = w(n, q) * v(n - 2, q) - v(n, q) * w(n - 2, q) == two;
                    ck.check(ok, || format!("n={n}, q={q}"))?;
                }
            }
        }
        IdentityId::F4 => {
            for q in &r.samples {
                for n in odd_range(r.max_odd) {
                    ck.check(u(n, q) == v(n, q) * w(n, q), || format!("n={n}, q={q}"))?;
                }
                for k in 0..=r.max_k {
                    ck.check(u(2 * k, q) == c(k, q) * u(k, q), || format!("2k={}, q={q}", 2 * k))?;
                }
            }
        }
        IdentityId::F5 => {
            for q in &r.samples {
                for n in odd_range(r.max_odd) {
                    let cn = c(n, q);
                    let a = &cn - &two == (q - &two) * w(n, q).square();
                    let b = &cn + &two == (q + &two) * v(n, q).square();
                    ck.check(a && b, || format!("n={n}, q={q}"))?;
                }
            }
        }
        IdentityId::F6 => {
            for q in &r.samples {
                for n in odd_range(r.max_odd) {
                    for m in odd_range(r.max_odd) {
                        let (cn, cm) = (c(n, q), c(m, q));
                        let wa = w(n * m, q) == w(n, q) * w(m, &cn);
                        let vnm = v(n * m, q);
                        let va = vnm == v(m, &cn) * v(n, q);
                        let vb = vnm == v(m, q) * v(n, &cm);
                        ck.check(wa && va && vb, || format!("n={n}, m={m}, q={q}"))?;
                    }
                }
            }
        }
        IdentityId::F7 => {
            for q in &r.samples {
                let qq = q2(q);
                for n in odd_range(r.max_odd) {
                    let a = c(n, q) == q * v(n, &qq);
                    let b = u(n, q) == w(n, &qq);
                    ck.check(a && b, || format!("n={n}, q={q}"))?;
                }
            }
        }
        IdentityId::F8 => {
            for t in &r.samples {
                let (q, x) = circle_point(t);
                for n in odd_range(r.max_odd) {
                    let ok = &x * u(n, &q) == sign_half(n) * c(n, &x);
                    ck.check(ok, || format!("first part, n={n}, q={q}, x={x}"))?;
                }
                // q = r^2 - 2 with r on the circle, so 2+q = r^2 and 2-q = s^2.
                let (rr, s) = circle_point(t);
                for n in odd_range(r.max_odd) {
                    let ok = c(n, &rr) == sign_half(n) * &rr * u(n, &s);
                    ck.check(ok, || format!("second part, n={n}, sqrt(2+q)={rr}"))?;
                }
            }
            for n in odd_range(r.max_odd) {
                let cn = cheb_coeffs(ChebKind::FirstC, n)?;
                let un = cheb_coeffs(ChebKind::SecondU, n)?;
                let c_half = halve_parity(&cn, true);
                let u_half = halve_parity(&un, false);
                let sgn = sign_half(n);
                let mut points: Vec<RationalTrace> = r.samples.clone();
                points.extend(r.samples.iter().filter_map(t_plus_inverse));
                for q in &points {
                    let a = u(n, q) == &sgn * c_half.eval(&(&four - q * q));
                    let b = c_half.eval(&(&two + q)) == &sgn * u_half.eval(&(&two - q));
                    ck.check(a && b, || format!("polynomial form, n={n}, q={q}"))?;
                }
            }
        }
        IdentityId::F9 => {
            let mut points: Vec<RationalTrace> = r.samples.clone();
            points.extend(r.samples.iter().filter_map(t_plus_inverse));
            for q in &points {
                for k in 0..=r.max_k {
                    let ok = c(k, q).square() + (&four - q * q) * u(k, q).square() == four;
                    ck.check(ok, || format!("k={k}, q={q}"))?;
                }
            }
        }
        IdentityId::Substitution => {
            let one = RationalTrace::one();
            for z in &r.samples {
                if z.is_zero() || z.abs() == one {
                    continue;
                }
                let q = z + z.recip();
                let zp = |e: i32| z.pow(e);
                for k in 0..=r.max_k as i32 {
                    let n = 2 * k as u64 + 1;
                    let wk = (zp(2 * k + 1) - &one) / (zp(k) * (z - &one));
                    let vk = (zp(2 * k + 1) + &one) / (zp(k) * (z + &one));
                    let uk = (zp(k) - zp(-k)) / (z - z.recip());
                    let ckk = zp(k) + zp(-k);
                    let kk = k as u64;
                    let ok = w(n, &q) == wk && v(n, &q) == vk && u(kk, &q) == uk && c(kk, &q) == ckk;
                    ck.check(ok, || format!("k={k}, z={z}"))?;
                }
            }
        }
        IdentityId::Factorization => {
            for n in odd_range(r.max_odd) {
                let ds: Vec<u64> = (1..=n).filter(|d| n % d == 0).collect();
                let wn = cheb_coeffs(ChebKind::FourthW, n)?;
                let vn = cheb_coeffs(ChebKind::ThirdV, n)?;
                let wp = product(ds.iter().copied().filter(|&d| d > 1))?;
                let vp = product(ds.iter().copied().filter(|&d| d > 1).map(|d| 2 * d))?;
                ck.check(wn == wp, || format!("W_{n}"))?;
                ck.check(vn == vp, || format!("V_{n}"))?;
                for l in 0..=r.max_l {
                    let cl = cheb_coeffs(ChebKind::FirstC, (1u64 << l) * n)?;
                    let cp = product(ds.iter().map(|&d| (1u64 << (l + 2)) * d))?;
                    ck.check(cl == cp, || format!("C_{}", (1u64 << l) * n))?;
                }
            }
        }
    }
    Ok(IdentityReport {
        identity: id,
        instances: ck.count,
    })
}

/// Runs every identity in [`IdentityId::ALL`].
pub fn verify_all_identities(r: &IdentityRanges) -> Result<Vec<IdentityReport>> {
    IdentityId::ALL
        .iter()
        .map(|&id| verify_identity(id, r))
        .collect()
}

/// A printed form of an identity that fails under exact arithmetic, with the
/// form that holds and the first counterexample found.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrintedDiscrepancy {
    pub identity: String,
    pub printed: String,
    pub holds: String,
    pub counterexample: Option<String>,
}

/// Searches for counterexamples to the variant forms that circulate for the
/// second half of F3 (independent indices `n, m`) and for the first half of F8
/// (no sign factor).
pub fn printed_variant_counterexamples() -> Vec<PrintedDiscrepancy> {
    let r = IdentityRanges::default();
    let two = RationalTrace::from_int(2);
    let mut f3 = None;
    'outer: for q in &r.samples {
        for n in odd_range(r.max_odd) {
            for m in odd_range(r.max_odd).skip(1) {
                if w(n, q) * v(m - 2, q) - v(n, q) * w(m - 2, q) != two {
                    f3 = Some(format!("n={n}, m={m}, q={q}"));
                    break 'outer;
                }
            }
        }
    }
    let mut f8 = None;
    'outer8: for t in &r.samples {
        let (q, x) = circle_point(t);
        for n in odd_range(r.max_odd) {
            if c(n, &q) != &q * u(n, &x) {
                f8 = Some(format!("n={n}, q={q}, sqrt(4-q^2)={x}"));
                break 'outer8;
            }
        }
    }
    vec![
        PrintedDiscrepancy {
            identity: "F3".into(),
            printed: "W_n V_{m-2} - V_n W_{m-2} = 2 for odd n, m".into(),
            holds: "W_n V_{n-2} - V_n W_{n-2} = 2".into(),
            counterexample: f3,
        },
        PrintedDiscrepancy {
            identity: "F8".into(),
            printed: "C_n(q) = q U_n(sqrt(4-q^2))".into(),
            holds: "sqrt(4-q^2) U_n(q) = (-1)^{(n-1)/2} C_n(sqrt(4-q^2))".into(),
            counterexample: f8,
        },
    ]
}
