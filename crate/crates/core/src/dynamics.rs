//! Orbits of rotations of the radius-2 circle and of Chebyshev interval maps
//! over the rationals, and the prime divisors of their numerators.
//!
//! Every orbit point carries `q_n = C_M(q)` for a known index `M`: `M = n`
//! for the rotation by `z_1 = q_1 + i w_1`, and `M = m^n` for the map
//! `ψ_m = C_m`. An odd prime dividing the numerator of `C_M(q)` lies in
//! `Π_{v2(M)+2}(q)`, so it satisfies `p >= 2^{v2(M)+1} - 1`. For `m = 2`
//! that is the bound `p >= 2^{n+1} - 1`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{primes_up_to, RationalTrace, Sieve};
use crate::cheb::{c, u};
use crate::error::{Error, Result};
use crate::partition::{classify_prime, PartitionClass};
use crate::traceclass::is_trivial;

/// Steps allowed by [`chebyshev_map_orbit`]; numerator bit length doubles
/// (for `m = 2`) with every step.
pub const DEFAULT_STEP_CAP: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "map", rename_all = "snake_case")]
pub enum OrbitKind {
    Rotation,
    Chebyshev { degree: u32 },
}

impl std::fmt::Display for OrbitKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            OrbitKind::Rotation => f.write_str("rotation"),
            OrbitKind::Chebyshev { degree } => write!(f, "Chebyshev map C_{degree}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitPoint {
    pub step: usize,
    pub q: RationalTrace,
    pub w: Option<RationalTrace>,
    /// Numerator of `q` in lowest terms.
    pub numerator: BigInt,
    /// `e` with `denom(q) = b^e`, `b = denom` of the starting point;
    /// saturates at `u64::MAX`.
    pub denominator_exponent: u64,
    /// `v2(M)` for `q = C_M(start)`.
    pub index_valuation: u32,
}

impl OrbitPoint {
    /// The class every odd prime divisor of the numerator must have.
    pub fn expected_class(&self) -> PartitionClass {
        PartitionClass::Pi(self.index_valuation + 2)
    }

    /// Smallest odd prime that can divide the numerator.
    pub fn divisor_bound(&self) -> u64 {
        1u64.checked_shl(self.index_valuation + 1)
            .map_or(u64::MAX, |b| b - 1)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Orbit {
    pub kind: OrbitKind,
    pub start: RationalTrace,
    /// True for the periodic starting points `0, ±1, ±2`.
    pub periodic: bool,
    pub points: Vec<OrbitPoint>,
}

impl Orbit {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn numerators(&self) -> impl Iterator<Item = &BigInt> {
        self.points.iter().map(|p| &p.numerator)
    }
}

fn point(step: usize, q: RationalTrace, w: Option<RationalTrace>, exp: u64, v2: u32) -> OrbitPoint {
    OrbitPoint {
        step,
        numerator: q.numer().clone(),
        q,
        w,
        denominator_exponent: exp,
        index_valuation: v2,
    }
}

/// `Φ^n(2)` for the rotation `Φ(z) = z_1 z / 2`: `q_n = C_n(q_1)` and
/// `w_n = w_1 U_n(q_1)`, for `n = 0..=steps`.
///
/// Periodic starting points are allowed and flagged.
pub fn rotation_orbit(
    q1: &RationalTrace,
    w1: Option<&RationalTrace>,
    steps: usize,
) -> Result<Orbit> {
    if let Some(w1) = w1 {
        if (q1.square() + w1.square()) != RationalTrace::from(4) {
            return Err(Error::NotOnCircle {
                q: q1.to_string(),
                w: w1.to_string(),
            });
        }
    }
    let points = (0..=steps)
        .map(|n| {
            let m = n as u64;
            let w = w1.map(|w1| w1 * u(m, q1));
            let v2 = if n == 0 { 0 } else { m.trailing_zeros() };
            point(n, c(m, q1), w, m, v2)
        })
        .collect();
    Ok(Orbit {
        kind: OrbitKind::Rotation,
        start: q1.clone(),
        periodic: is_trivial(q1),
        points,
    })
}

/// `q_n = ψ_m^n(q_0)` with `ψ_m = C_m`, for `n = 0..=steps`, with
/// `steps <= DEFAULT_STEP_CAP`.
pub fn chebyshev_map_orbit(m: u32, q0: &RationalTrace, steps: usize) -> Result<Orbit> {
    chebyshev_map_orbit_capped(m, q0, steps, DEFAULT_STEP_CAP)
}

/// [`chebyshev_map_orbit`] with an explicit step cap.
pub fn chebyshev_map_orbit_capped(
    m: u32,
    q0: &RationalTrace,
    steps: usize,
    cap: usize,
) -> Result<Orbit> {
    if m < 2 {
        return Err(Error::InvalidArgument(format!("map degree {m} is below 2")));
    }
    if steps > cap {
        return Err(Error::InvalidArgument(format!(
            "{steps} steps exceed the cap of {cap}"
        )));
    }
    if is_trivial(q0) {
        return Err(Error::TrivialStartingPoint(q0.to_string()));
    }
    let v2m = m.trailing_zeros();
    let mut points = Vec::with_capacity(steps + 1);
    let mut q = q0.clone();
    for n in 0..=steps {
        if n > 0 {
            q = c(m as u64, &q);
        }
        let exp = (m as u64).checked_pow(n as u32).unwrap_or(u64::MAX);
        points.push(point(n, q.clone(), None, exp, n as u32 * v2m));
    }
    Ok(Orbit {
        kind: OrbitKind::Chebyshev { degree: m },
        start: q0.clone(),
        periodic: false,
        points,
    })
}

/// Trial-division result for one orbit numerator.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepFactors {
    pub step: usize,
    pub numerator: BigInt,
    pub factors: Vec<(u64, u32)>,
    /// Part with no prime factor up to the bound; `1` when complete.
    pub cofactor: BigInt,
    pub expected_class: PartitionClass,
}

impl StepFactors {
    pub fn is_complete(&self) -> bool {
        self.cofactor.is_one()
    }

    pub fn odd_primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.factors.iter().map(|&(p, _)| p).filter(|&p| p != 2)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "violation", rename_all = "snake_case")]
pub enum OrbitViolation {
    /// An odd prime below `2^{v2(M)+1} - 1`.
    DivisorBound { step: usize, p: u64, bound: u64 },
    /// An odd common factor where none may occur.
    CommonFactor { steps: (usize, usize), gcd: BigInt },
    /// For odd `m`, `a_{n-1}` must divide `a_n`.
    Chain { step: usize },
    /// A prime divisor outside `Π_{v2(M)+2}`.
    Class { step: usize, p: u64, found: PartitionClass, expected: PartitionClass },
}

/// Distinct odd prime divisors of a rotation orbit by class.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct DivisorSplit {
    pub pi2: usize,
    /// In `Π_* ∖ Π_2`.
    pub higher: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitDivisorReport {
    pub kind: OrbitKind,
    pub start: RationalTrace,
    pub factor_bound: u64,
    pub steps: Vec<StepFactors>,
    /// Distinct odd primes found, against `π(factor_bound)`; the quantities
    /// behind the density-zero statement, reported without a threshold.
    pub distinct_primes: usize,
    pub primes_below_bound: usize,
    /// Present for rotation orbits.
    pub split: Option<DivisorSplit>,
    /// Pairs of steps whose gcd was inspected.
    pub gcd_pairs_checked: usize,
    pub violations: Vec<OrbitViolation>,
}

impl OrbitDivisorReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn incomplete_steps(&self) -> impl Iterator<Item = &StepFactors> {
        self.steps.iter().filter(|s| !s.is_complete())
    }
}

fn odd_part(mut n: BigInt) -> BigInt {
    while !n.is_zero() && n.is_even() {
        n >>= 1;
    }
    n
}

/// Factors every nonzero numerator up to `factor_bound` and checks the
/// divisor bound, the class of every prime found, and the coprimality rule
/// suited to the orbit:
///
/// * even `m`: pairwise gcds are `1` or `2`;
/// * odd `m`: `a_{n-1} | a_n`;
/// * rotation: numerators at indices of opposite parity share only powers
///   of 2.
///
/// Step 0 of a rotation orbit (`q_0 = 2`) is skipped. Periodic rotation
/// orbits are factored but not checked.
pub fn orbit_divisor_report(orbit: &Orbit, factor_bound: u64) -> OrbitDivisorReport {
    let sieve = Sieve::new(factor_bound);
    let skip = usize::from(orbit.kind == OrbitKind::Rotation);
    let live: Vec<&OrbitPoint> = orbit
        .points
        .iter()
        .skip(skip)
        .filter(|p| !p.numerator.is_zero())
        .collect();
    let steps: Vec<StepFactors> = live
        .par_iter()
        .map(|pt| {
            let f = sieve.factor_big(&pt.numerator);
            StepFactors {
                step: pt.step,
                numerator: pt.numerator.clone(),
                factors: f.factors,
                cofactor: f.cofactor,
                expected_class: pt.expected_class(),
            }
        })
        .collect();

    let check = !orbit.periodic;
    let mut violations = Vec::new();
    let mut classes: BTreeMap<u64, PartitionClass> = BTreeMap::new();
    for (s, pt) in steps.iter().zip(&live) {
        for p in s.odd_primes() {
            let found = *classes
                .entry(p)
                .or_insert_with(|| classify_prime(&orbit.start, p));
            if !check {
                continue;
            }
            if p < pt.divisor_bound() {
                violations.push(OrbitViolation::DivisorBound {
                    step: s.step,
                    p,
                    bound: pt.divisor_bound(),
                });
            }
            if found != s.expected_class {
                violations.push(OrbitViolation::Class {
                    step: s.step,
                    p,
                    found,
                    expected: s.expected_class,
                });
            }
        }
    }

    let mut gcd_pairs_checked = 0;
    if check {
        match orbit.kind {
            OrbitKind::Chebyshev { degree } if degree % 2 == 1 => {
                for pair in steps.windows(2) {
                    if pair[1].step == pair[0].step + 1 {
                        gcd_pairs_checked += 1;
                        if !(&pair[1].numerator % &pair[0].numerator).is_zero() {
                            violations.push(OrbitViolation::Chain { step: pair[1].step });
                        }
                    }
                }
            }
            kind => {
                let pairs: Vec<(usize, usize)> = (0..steps.len())
                    .flat_map(|i| (i + 1..steps.len()).map(move |j| (i, j)))
                    .filter(|&(i, j)| {
                        kind != OrbitKind::Rotation || (steps[i].step + steps[j].step) % 2 == 1
                    })
                    .collect();
                gcd_pairs_checked = pairs.len();
                let bad: Vec<OrbitViolation> = pairs
                    .par_iter()
                    .filter_map(|&(i, j)| {
                        let g = steps[i].numerator.gcd(&steps[j].numerator);
                        (!odd_part(g.clone()).is_one()).then(|| OrbitViolation::CommonFactor {
                            steps: (steps[i].step, steps[j].step),
                            gcd: g,
                        })
                    })
                    .collect();
                violations.extend(bad);
            }
        }
    }

    let split = (orbit.kind == OrbitKind::Rotation).then(|| {
        let mut split = DivisorSplit::default();
        for class in classes.values() {
            match class {
                PartitionClass::Pi(2) => split.pi2 += 1,
                PartitionClass::Pi(_) => split.higher += 1,
                _ => {}
            }
        }
        split
    });

    OrbitDivisorReport {
        kind: orbit.kind,
        start: orbit.start.clone(),
        factor_bound,
        distinct_primes: classes.len(),
        primes_below_bound: primes_up_to(factor_bound).len(),
        steps,
        split,
        gcd_pairs_checked,
        violations,
    }
}

/// Checks `U_{2^n} = C_1 C_2 C_4 ... C_{2^{n-1}}` at `q`.
pub fn u_pow2_factorization_holds(q: &RationalTrace, n: u32) -> bool {
    let mut prod = RationalTrace::one();
    for k in 0..n {
        prod = prod * c(1u64 << k, q);
    }
    u(1u64 << n, q) == prod
}

/// Bit length of the largest numerator; a cheap growth summary.
pub fn max_numerator_bits(orbit: &Orbit) -> u64 {
    orbit.numerators().map(|a| a.abs().bits()).max().unwrap_or(0)
}
