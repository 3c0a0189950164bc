//! Exact identities between Dickson and Chebyshev polynomials.
//!
//! Two forms are kept in the misprinted shape they are usually quoted in so
//! the discrepancy can be reported: [`LucasIdentity::DualityKAsPrinted`] and
//! [`LucasIdentity::OddKAsPrinted`]. Both fail already at the first index.

use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::params::{dickson, psi, trace_of, DicksonKind, LucasParams};
use crate::arith::RationalTrace;
use crate::cheb::{c, u, v, w};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum LucasIdentity {
    /// `D^{(n+1)/2} L_n(T,Q) = K_n(D,-DQ)`, odd `n`.
    DualityL,
    /// `D^{(n+1)/2} K_n(T,Q) = L_n(D,-DQ)`, odd `n`; false at `n = 1`.
    DualityKAsPrinted,
    /// `D^{(n-1)/2} K_n(T,Q) = T L_n(D,-DQ)`, odd `n`.
    DualityK,
    /// `L_n(aT, a^2 Q) = a^{n-1} L_n(T,Q)`.
    ScalingL,
    /// `K_n(aT, a^2 Q) = a^n K_n(T,Q)`.
    ScalingK,
    /// `L_{2k}(T,Q) = T L_k(T^2-2Q, Q^2) = T Q^{k-1} U_k(q)`.
    EvenL,
    /// `K_{2k}(T,Q) = K_k(T^2-2Q, Q^2) = Q^k C_k(q)`.
    EvenK,
    /// `L_{2k-1}(T,Q) = Q^{k-1} W_{2k-1}(q)`.
    OddL,
    /// `K_{2k-1}(T,Q) = Q^k V_{2k-1}(q)`; false at `k = 1`.
    OddKAsPrinted,
    /// `K_{2k-1}(T,Q) = T Q^{k-1} V_{2k-1}(q)`.
    OddK,
    /// `L_n(T,1) = U_n(T)` and `K_n(T,1) = C_n(T)`.
    UnitDeterminant,
}

impl LucasIdentity {
    pub const ALL: [LucasIdentity; 11] = [
        LucasIdentity::DualityL,
        LucasIdentity::DualityKAsPrinted,
        LucasIdentity::DualityK,
        LucasIdentity::ScalingL,
        LucasIdentity::ScalingK,
        LucasIdentity::EvenL,
        LucasIdentity::EvenK,
        LucasIdentity::OddL,
        LucasIdentity::OddKAsPrinted,
        LucasIdentity::OddK,
        LucasIdentity::UnitDeterminant,
    ];

    /// False for the two misprinted forms.
    pub fn expected_to_hold(self) -> bool {
        !matches!(
            self,
            LucasIdentity::DualityKAsPrinted | LucasIdentity::OddKAsPrinted
        )
    }
}

impl fmt::Display for LucasIdentity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LucasIdentityCheck {
    pub identity: LucasIdentity,
    pub instances: u64,
    pub failures: u64,
    pub first_counterexample: Option<String>,
}

impl LucasIdentityCheck {
    pub fn holds(&self) -> bool {
        self.failures == 0
    }

    /// Holds exactly when it is expected to.
    pub fn as_expected(&self) -> bool {
        self.holds() == self.identity.expected_to_hold()
    }
}

/// Fifty small pairs: `T ∈ [-3, 6]`, `Q ∈ {-3, -2, -1, 1, 2}`.
pub fn default_params() -> Vec<LucasParams> {
    let mut out = Vec::new();
    for t in -3i64..=6 {
        for q in [-3i64, -2, -1, 1, 2] {
            out.push(LucasParams::new(t, q).expect("nonzero Q"));
        }
    }
    out
}

fn rat(x: BigInt) -> RationalTrace {
    RationalTrace::from(x)
}

fn pow(x: &BigInt, e: u64) -> BigInt {
    num_traits::pow(x.clone(), e as usize)
}

/// Checks `id` for every pair and every index up to `n_max`.
pub fn verify_lucas_identity(
    id: LucasIdentity,
    params: &[LucasParams],
    n_max: u64,
) -> LucasIdentityCheck {
    use DicksonKind::{K, L};
    let mut check = LucasIdentityCheck {
        identity: id,
        instances: 0,
        failures: 0,
        first_counterexample: None,
    };
    let mut record = |ok: bool, what: String| {
        check.instances += 1;
        if !ok {
            check.failures += 1;
            check.first_counterexample.get_or_insert(what);
        }
    };
    for x in params {
        let (t, qd) = (x.t(), x.q());
        let d = x.discriminant();
        let twin = LucasParams::new(d.clone(), -&d * qd).ok();
        let q = trace_of(x);
        let qr = rat(qd.clone());
        for n in 1..=n_max {
            let odd = n % 2 == 1;
            let k = n.div_ceil(2);
            let at = |m, e: String| format!("{x}, {m}: {e}");
            match id {
                LucasIdentity::DualityL | LucasIdentity::DualityKAsPrinted | LucasIdentity::DualityK => {
                    // D = 0 makes (D, -DQ) degenerate.
                    let Some(tw) = twin.as_ref().filter(|_| odd) else {
                        continue;
                    };
                    let (lhs, rhs) = match id {
                        LucasIdentity::DualityL => (pow(&d, k) * dickson(L, n, x), dickson(K, n, tw)),
                        LucasIdentity::DualityKAsPrinted => {
                            (pow(&d, k) * dickson(K, n, x), dickson(L, n, tw))
                        }
                        _ => (pow(&d, k - 1) * dickson(K, n, x), t * dickson(L, n, tw)),
                    };
                    record(lhs == rhs, at(format!("n={n}"), format!("{lhs} vs {rhs}")));
                }
                LucasIdentity::ScalingL | LucasIdentity::ScalingK => {
                    for a in [2i64, -3] {
                        let a = BigInt::from(a);
                        let y = LucasParams::new(&a * t, &a * &a * qd).expect("nonzero Q");
                        let (kind, e) = if id == LucasIdentity::ScalingL {
                            (L, n - 1)
                        } else {
                            (K, n)
                        };
                        let lhs = dickson(kind, n, &y);
                        let rhs = pow(&a, e) * dickson(kind, n, x);
                        record(lhs == rhs, at(format!("n={n}, a={a}"), format!("{lhs} vs {rhs}")));
                    }
                }
                LucasIdentity::EvenL | LucasIdentity::EvenK => {
                    let m = 2 * n;
                    let sq = psi(x);
                    let (direct, via_psi, via_cheb) = if id == LucasIdentity::EvenL {
                        (
                            dickson(L, m, x),
                            t * dickson(L, n, &sq),
                            rat(t.clone()) * qr.pow(n as i32 - 1) * u(n, &q),
                        )
                    } else {
                        (dickson(K, m, x), dickson(K, n, &sq), qr.pow(n as i32) * c(n, &q))
                    };
                    let ok = direct == via_psi && rat(direct.clone()) == via_cheb;
                    record(ok, at(format!("k={n}"), format!("{direct}, {via_psi}, {via_cheb}")));
                }
                LucasIdentity::OddL | LucasIdentity::OddKAsPrinted | LucasIdentity::OddK => {
                    let m = 2 * n - 1;
                    let (lhs, rhs) = match id {
                        LucasIdentity::OddL => (dickson(L, m, x), qr.pow(n as i32 - 1) * w(m, &q)),
                        LucasIdentity::OddKAsPrinted => {
                            (dickson(K, m, x), qr.pow(n as i32) * v(m, &q))
                        }
                        _ => (
                            dickson(K, m, x),
                            rat(t.clone()) * qr.pow(n as i32 - 1) * v(m, &q),
                        ),
                    };
                    let lhs = rat(lhs);
                    record(lhs == rhs, at(format!("k={n}"), format!("{lhs} vs {rhs}")));
                }
                LucasIdentity::UnitDeterminant => {
                    let y = LucasParams::new(t.clone(), 1).expect("nonzero Q");
                    let tr = rat(t.clone());
                    let ok = rat(dickson(L, n, &y)) == u(n, &tr) && rat(dickson(K, n, &y)) == c(n, &tr);
                    record(ok, at(format!("n={n}"), "unit determinant".to_string()));
                }
            }
        }
    }
    check
}

/// Every identity over the same pairs and indices.
pub fn lucas_identity_suite(params: &[LucasParams], n_max: u64) -> Vec<LucasIdentityCheck> {
    LucasIdentity::ALL
        .iter()
        .map(|&id| verify_lucas_identity(id, params, n_max))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_behaves_as_expected() {
        let params = default_params();
        assert_eq!(params.len(), 50);
        for check in lucas_identity_suite(&params, 15) {
            assert!(check.instances > 0, "{}", check.identity);
            assert!(check.as_expected(), "{check:?}");
        }
    }

    #[test]
    fn misprints_fail_at_first_index() {
        let x = [LucasParams::new(1, -1).unwrap()];
        let c = verify_lucas_identity(LucasIdentity::DualityKAsPrinted, &x, 1);
        assert_eq!(c.failures, 1);
        let c = verify_lucas_identity(LucasIdentity::OddKAsPrinted, &x, 1);
        assert_eq!(c.failures, 1);
    }
}
