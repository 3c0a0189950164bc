//! The sets `Ω_s^±`, `R_k`, `Z_k`, `Γ_s` and the containments between them
//! and the partition classes.

use std::collections::HashSet;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::classify::{classify_prime, PartitionClass};
use crate::arith::{
    is_square_rational, legendre_rational, rational_mod, sqrt_mod, two_adic_valuation,
    FpElement, RationalTrace,
};
use crate::cheb::{cheb_coeffs, splits_completely, ChebKind, IntPolynomial};
use crate::error::{Error, Result};
use crate::sl2::{check_odd_prime, delta};

/// Which of `±q_0` is the target of a preimage search.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn apply(self, q: FpElement) -> FpElement {
        match self {
            Sign::Plus => q,
            Sign::Minus => -q,
        }
    }
}

/// The four cells of `R_{k-1}` at depth `k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Cell {
    /// `Ω_k^+ \ Ω_k^-`.
    OmegaPlusOnly,
    /// `Ω_k^- \ Ω_k^+`.
    OmegaMinusOnly,
    /// `R_k = Ω_k^+ ∩ Ω_k^-`.
    BothR,
    /// `Z_k`, in neither.
    NeitherZ,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellAssignment {
    pub k: u32,
    pub cell: Cell,
    pub p_hat: u64,
    pub p_hat_val2: u32,
}

/// True when neither `2 + q` nor `2 - q` is a rational square.
pub fn is_primitive(q: &RationalTrace) -> bool {
    let two = RationalTrace::from_int(2);
    !is_square_rational(&(&two + q)) && !is_square_rational(&(&two - q))
}

/// Fails with `ExcludedPrime` when `p` divides the numerator or denominator
/// of `δ = q_0^2 - 4`.
pub fn check_admissible(q0: &RationalTrace, p: u64) -> Result<()> {
    check_odd_prime(p)?;
    let d = delta(q0);
    let pb = BigInt::from(p);
    let divides = |n: &BigInt| (n % &pb) == BigInt::from(0);
    if divides(d.numer()) || divides(d.denom()) {
        return Err(Error::ExcludedPrime {
            q: q0.to_string(),
            p,
        });
    }
    Ok(())
}

/// Whether `±q_0` has a preimage under `C_{2^s}` in F_p.
///
/// Walks back through `x ↦ x^2 - 2` one level at a time; every level keeps
/// the distinct preimages found so far.
pub fn omega_member(q0: &RationalTrace, s: u32, sign: Sign, p: u64) -> Result<bool> {
    check_admissible(q0, p)?;
    if s == 0 {
        return Ok(true);
    }
    let target = sign.apply(rational_mod(q0, p)?);
    Ok(omega_member_mod(target, s))
}

fn omega_member_mod(target: FpElement, s: u32) -> bool {
    let two = FpElement::new(2, target.modulus());
    let mut level: HashSet<u64> = HashSet::from([target.value()]);
    for _ in 0..s {
        let mut next = HashSet::new();
        for &b in &level {
            if let Some(a) = sqrt_mod(FpElement::new(b, target.modulus()) + two) {
                next.insert(a.value());
                next.insert((-a).value());
            }
        }
        if next.is_empty() {
            return false;
        }
        level = next;
    }
    true
}

/// `p̂ = (p - (δ|p))/2`.
pub fn p_hat(q0: &RationalTrace, p: u64) -> Result<u64> {
    check_odd_prime(p)?;
    let d = delta(q0);
    let ds = legendre_rational(&d, p).map_err(|_| Error::ExcludedPrime {
        q: q0.to_string(),
        p,
    })?;
    if ds == 0 {
        return Err(Error::DeltaDivisor {
            q: q0.to_string(),
            p,
        });
    }
    Ok((p as i64 - ds as i64) as u64 / 2)
}

/// The largest `s` with `p ≡ ±1 mod 2^{s+2}`.
pub fn gamma_level(p: u64) -> u32 {
    assert!(p % 2 == 1 && p >= 3, "gamma_level needs an odd prime");
    two_adic_valuation(p - 1).0.max(two_adic_valuation(p + 1).0) - 2
}

/// The cell of `p` in the depth-`k` table; `p` must lie in `R_{k-1}`.
pub fn cell_assignment(q0: &RationalTrace, p: u64, k: u32) -> Result<CellAssignment> {
    assert!(k >= 1, "table depth starts at 1");
    check_admissible(q0, p)?;
    let qm = rational_mod(q0, p)?;
    if k >= 2 && !(omega_member_mod(qm, k - 1) && omega_member_mod(-qm, k - 1)) {
        return Err(Error::NotInParentCell {
            q: q0.to_string(),
            p,
            parent: k - 1,
        });
    }
    let plus = omega_member_mod(qm, k);
    let minus = omega_member_mod(-qm, k);
    let cell = match (plus, minus) {
        (true, false) => Cell::OmegaPlusOnly,
        (false, true) => Cell::OmegaMinusOnly,
        (true, true) => Cell::BothR,
        (false, false) => Cell::NeitherZ,
    };
    let ph = p_hat(q0, p)?;
    Ok(CellAssignment {
        k,
        cell,
        p_hat: ph,
        p_hat_val2: ph.trailing_zeros(),
    })
}

/// The largest `k` with `p ∈ R_k`, capped at `max_k`.
pub fn r_depth(q0: &RationalTrace, p: u64, max_k: u32) -> Result<u32> {
    check_admissible(q0, p)?;
    let qm = rational_mod(q0, p)?;
    let mut k = 0;
    while k < max_k && omega_member_mod(qm, k + 1) && omega_member_mod(-qm, k + 1) {
        k += 1;
    }
    Ok(k)
}

/// A single containment checked at one prime.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClauseCheck {
    pub clause: String,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableReport {
    pub q0: RationalTrace,
    pub p: u64,
    pub class: PartitionClass,
    pub cells: Vec<CellAssignment>,
    pub checks: Vec<ClauseCheck>,
}

impl TableReport {
    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }

    pub fn failures(&self) -> impl Iterator<Item = &ClauseCheck> {
        self.checks.iter().filter(|c| !c.holds)
    }
}

const MAX_TABLE_DEPTH: u32 = 64;

/// Checks the class of `p` against the boundary clauses for `(2|p)` and
/// `(2±q_0|p)`, and, for primitive `q_0` and admissible `p`, against every
/// cell table that `p` reaches. Only clauses whose hypothesis holds at `p`
/// are reported.
pub fn verify_tables(q0: &RationalTrace, p: u64) -> Result<TableReport> {
    check_odd_prime(p)?;
    if rational_mod(q0, p).is_err() {
        return Err(Error::ExcludedPrime {
            q: q0.to_string(),
            p,
        });
    }
    let class = classify_prime(q0, p);
    let two = RationalTrace::from_int(2);
    let l2 = legendre_rational(&two, p)?;
    let lp = legendre_rational(&(&two + q0), p)?;
    let lm = legendre_rational(&(&two - q0), p)?;
    let mut checks = Vec::new();
    let mut push = |clause: String, holds: bool| checks.push(ClauseCheck { clause, holds });

    if matches!(class, PartitionClass::Pi(s) if s >= 3) {
        push(format!("{class} implies (2|p) = 1"), l2 == 1);
    }
    if class == PartitionClass::Pi(2) {
        push("Pi(2) implies (2|p) = (2+q|p) = (2-q|p)".into(), l2 == lp && lp == lm);
    }
    if lp == 0 {
        push("(2+q|p) = 0 implies Pi1".into(), class == PartitionClass::Pi1);
    }
    if lm == 0 {
        push("(2-q|p) = 0 implies Pi0".into(), class == PartitionClass::Pi0);
    }

    let mut cells = Vec::new();
    if is_primitive(q0) && check_admissible(q0, p).is_ok() {
        for k in 1..=MAX_TABLE_DEPTH {
            let ca = cell_assignment(q0, p, k)?;
            cells.push(ca);
            let v = ca.p_hat_val2;
            match ca.cell {
                Cell::OmegaPlusOnly => push(
                    format!("k={k}: Omega+ only implies Pi0 and 2^{} || p-hat", k - 1),
                    class == PartitionClass::Pi0 && v == k - 1,
                ),
                Cell::OmegaMinusOnly => push(
                    format!("k={k}: Omega- only implies Pi1 and 2^{} || p-hat", k - 1),
                    class == PartitionClass::Pi1 && v == k - 1,
                ),
                Cell::NeitherZ => {
                    push(
                        format!("k={k}: Z_k implies Pi_* and 2^{k} | p-hat"),
                        class.is_star() && v >= k,
                    );
                    if v >= k {
                        let s = v - k;
                        push(
                            format!("k={k}: Z_k with 2^{v} || p-hat implies Pi({})", s + 2),
                            class == PartitionClass::Pi(s + 2),
                        );
                    }
                }
                Cell::BothR => push(format!("k={k}: R_k implies 2^{k} | p-hat"), v >= k),
            }
            if ca.cell != Cell::BothR {
                break;
            }
        }
    }
    Ok(TableReport {
        q0: q0.clone(),
        p,
        class,
        cells,
        checks,
    })
}

/// `den * (f(x) + c)` for a rational constant `c = num/den`, as an integer
/// polynomial with the same roots mod any `p ∤ den`.
fn shifted(f: &IntPolynomial, c: &RationalTrace) -> IntPolynomial {
    let d = c.denom().clone();
    &f.scale(&d) + &IntPolynomial::constant(c.numer().clone())
}

fn c_pow2(e: u32) -> IntPolynomial {
    cheb_coeffs(ChebKind::FirstC, 1u64 << e).expect("C index")
}

/// One splitting characterization evaluated at a prime: the set-membership
/// side computed from the cell machinery, and the splitting side.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplittingCheck {
    pub predicate: String,
    pub membership: bool,
    pub splits: bool,
}

impl SplittingCheck {
    pub fn agrees(&self) -> bool {
        self.membership == self.splits
    }
}

/// The splitting-field characterizations of `R_k`, `Ω_{k+1}^± ∩ R_k`,
/// `R_k ∩ Γ_{k+s}` and `(R_1 ∪ Z_1) ∩ Γ_s`, for `1 <= k <= max_k` and
/// `0 <= s <= max_s`.
pub fn splitting_checks(
    q0: &RationalTrace,
    p: u64,
    max_k: u32,
    max_s: u32,
) -> Result<Vec<SplittingCheck>> {
    check_admissible(q0, p)?;
    let qm = rational_mod(q0, p)?;
    let in_omega = |s: u32, sign: Sign| omega_member_mod(sign.apply(qm), s);
    let in_r = |k: u32| in_omega(k, Sign::Plus) && in_omega(k, Sign::Minus);
    let gl = gamma_level(p);
    let two = RationalTrace::from_int(2);
    let mut out = Vec::new();

    for k in 1..=max_k {
        // C_{2^{k+1}}(x) + 2 - q0^2
        let rk_poly = shifted(&c_pow2(k + 1), &(&two - q0 * q0));
        out.push(SplittingCheck {
            predicate: format!("R_{k}"),
            membership: in_r(k),
            splits: splits_completely(&rk_poly, p)?,
        });
        for sign in [Sign::Plus, Sign::Minus] {
            let (a, b) = match sign {
                Sign::Plus => (-q0, q0.clone()),
                Sign::Minus => (q0.clone(), -q0),
            };
            let f = &shifted(&c_pow2(k + 1), &a) * &shifted(&c_pow2(k), &b);
            let sym = if sign == Sign::Plus { '+' } else { '-' };
            out.push(SplittingCheck {
                predicate: format!("Omega{sym}_{} & R_{k}", k + 1),
                membership: in_omega(k + 1, sign) && in_r(k),
                splits: splits_completely(&f, p)?,
            });
        }
        for s in 0..=max_s {
            let f = &c_pow2(k + s) * &rk_poly;
            out.push(SplittingCheck {
                predicate: format!("R_{k} & Gamma_{}", k + s),
                membership: in_r(k) && gl >= k + s,
                splits: splits_completely(&f, p)?,
            });
        }
    }
    let d = delta(q0);
    let x2_plus_delta = IntPolynomial::new(vec![
        d.numer().clone(),
        BigInt::from(0),
        d.denom().clone(),
    ]);
    let r1_or_z1 = in_omega(1, Sign::Plus) == in_omega(1, Sign::Minus);
    for s in 0..=max_s {
        let f = &x2_plus_delta * &c_pow2(s);
        out.push(SplittingCheck {
            predicate: format!("(R_1 | Z_1) & Gamma_{s}"),
            membership: r1_or_z1 && gl >= s,
            splits: splits_completely(&f, p)?,
        });
    }
    Ok(out)
}

/// Whether `C_{2^s}` splits completely mod `p`.
pub fn c_pow2_splits(s: u32, p: u64) -> Result<bool> {
    splits_completely(&c_pow2(s), p)
}
