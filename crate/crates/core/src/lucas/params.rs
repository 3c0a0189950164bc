use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{is_square_rational, FpElement, RationalTrace, Sieve};
use crate::cheb::Mat2;
use crate::error::{Error, Result};
use crate::sl2::{check_odd_prime, mat_pow, Mat2Fp};
use crate::traceclass::{classify_trace, TraceClassification};

/// Trial-division bound for squarefree parts; cofactors below its cube are
/// still resolved exactly.
pub const SQUAREFREE_BOUND: u64 = 1 << 20;

fn sieve() -> &'static Sieve {
    static S: OnceLock<Sieve> = OnceLock::new();
    S.get_or_init(|| Sieve::new(SQUAREFREE_BOUND))
}

/// An integer pair `(T, Q)` with `Q != 0`: trace and determinant of an
/// integer 2x2 matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LucasParams {
    t: BigInt,
    q: BigInt,
}

impl LucasParams {
    pub fn new(t: impl Into<BigInt>, q: impl Into<BigInt>) -> Result<Self> {
        let q = q.into();
        if q.is_zero() {
            return Err(Error::InvalidArgument(
                "Lucas determinant must be nonzero".to_string(),
            ));
        }
        Ok(LucasParams { t: t.into(), q })
    }

    pub fn t(&self) -> &BigInt {
        &self.t
    }

    pub fn q(&self) -> &BigInt {
        &self.q
    }

    /// `D = T^2 - 4Q`.
    pub fn discriminant(&self) -> BigInt {
        &self.t * &self.t - BigInt::from(4) * &self.q
    }
}

impl fmt::Display for LucasParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.t, self.q)
    }
}

/// `L` (second kind, `L_0 = 0, L_1 = 1`) or `K` (first kind, `K_0 = 2,
/// K_1 = T`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum DicksonKind {
    L,
    K,
}

/// `X_n` of `X_{n+1} = T X_n - Q X_{n-1}`.
pub fn dickson(kind: DicksonKind, n: u64, params: &LucasParams) -> BigInt {
    let (t, q) = (&params.t, &params.q);
    let (mut prev, mut cur) = match kind {
        DicksonKind::L => (BigInt::zero(), BigInt::one()),
        DicksonKind::K => (BigInt::from(2), t.clone()),
    };
    if n == 0 {
        return prev;
    }
    for _ in 1..n {
        let next = t * &cur - q * &prev;
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}

/// `X_n` from `[[0, 1], [-Q, T]]^n`: `L_n` is the corner entry, `K_n` the
/// trace.
pub fn dickson_matrix(kind: DicksonKind, n: u64, params: &LucasParams) -> BigInt {
    let z = BigInt::zero();
    let o = BigInt::one();
    let a = Mat2([[z.clone(), o.clone()], [-&params.q, params.t.clone()]]);
    let m = a.pow(n, Mat2([[o.clone(), z.clone()], [z, o]])).0;
    match kind {
        DicksonKind::L => m[0][1].clone(),
        DicksonKind::K => &m[0][0] + &m[1][1],
    }
}

/// `X_n mod p` in `O(log n)` matrix products.
pub fn dickson_mod(kind: DicksonKind, n: u64, params: &LucasParams, p: u64) -> Result<FpElement> {
    check_odd_prime(p)?;
    let t = FpElement::from_bigint(&params.t, p);
    let q = FpElement::from_bigint(&params.q, p);
    let a = Mat2Fp::new(FpElement::zero(p), FpElement::one(p), -q, t);
    let m = mat_pow(&a, n);
    Ok(match kind {
        DicksonKind::L => m.get(0, 1),
        DicksonKind::K => m.trace(),
    })
}

/// `q = T^2/Q - 2`, the trace labelling the similarity class.
pub fn trace_of(params: &LucasParams) -> RationalTrace {
    RationalTrace::from_ratio(num_rational::BigRational::new(
        &params.t * &params.t,
        params.q.clone(),
    )) - RationalTrace::from_int(2)
}

/// `T^2 Q_1 = T_1^2 Q`.
pub fn similar(a: &LucasParams, b: &LucasParams) -> bool {
    &a.t * &a.t * &b.q == &b.t * &b.t * &a.q
}

/// `(D, -DQ)`, or `(0, Q)` when `D = 0`.
pub fn twin_params(params: &LucasParams) -> LucasParams {
    let d = params.discriminant();
    if d.is_zero() {
        return LucasParams {
            t: BigInt::zero(),
            q: params.q.clone(),
        };
    }
    LucasParams {
        q: -&d * &params.q,
        t: d,
    }
}

/// `ψ(T, Q) = (T^2 - 2Q, Q^2)`, the square of the class.
pub fn psi(params: &LucasParams) -> LucasParams {
    LucasParams {
        t: &params.t * &params.t - BigInt::from(2) * &params.q,
        q: &params.q * &params.q,
    }
}

/// For `Q = R^2` (`R > 0`) the roots `(2R ± T, (2R ± T) R)`; empty otherwise.
/// Degenerate roots with zero determinant are dropped.
pub fn param_roots(params: &LucasParams) -> Vec<LucasParams> {
    if params.q.is_negative() {
        return Vec::new();
    }
    let r = params.q.sqrt();
    if &r * &r != params.q {
        return Vec::new();
    }
    let two_r = BigInt::from(2) * &r;
    let mut out: Vec<LucasParams> = [&two_r + &params.t, &two_r - &params.t]
        .into_iter()
        .filter(|x| !x.is_zero())
        .map(|x| LucasParams { q: &x * &r, t: x })
        .collect();
    out.dedup();
    out
}

/// `(aP, aR)` with `a` squarefree, `P >= 0`, `R > 0`, `gcd(R, P) =
/// gcd(R, a) = 1`, and `T^2/Q = a P^2 / R`. The sign of `T^2/Q` sits in `a`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SimpleValue {
    pub a: BigInt,
    pub p: BigInt,
    pub r: BigInt,
}

impl SimpleValue {
    /// The pair `(aP, aR)`.
    pub fn params(&self) -> LucasParams {
        LucasParams {
            t: &self.a * &self.p,
            q: &self.a * &self.r,
        }
    }

    /// The pair `(-aP, aR)`.
    pub fn negated_params(&self) -> LucasParams {
        LucasParams {
            t: -(&self.a * &self.p),
            q: &self.a * &self.r,
        }
    }
}

impl fmt::Display for SimpleValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "a={}, P={}, R={}", self.a, self.p, self.r)
    }
}

/// `n = a P^2` with `a` squarefree and `P > 0`, for `n > 0`.
fn squarefree_decomposition(n: &BigInt) -> Result<(BigInt, BigInt)> {
    let pf = sieve().factor_big(n);
    let mut a = BigInt::one();
    let mut p = BigInt::one();
    for &(prime, e) in &pf.factors {
        let bp = BigInt::from(prime);
        p *= bp.pow(e / 2);
        if e % 2 == 1 {
            a *= bp;
        }
    }
    let c = pf.cofactor;
    if !c.is_one() {
        // No prime factor of c is below the bound, so c < bound^3 has at
        // most two prime factors: it is squarefree unless it is a square.
        let b = BigInt::from(SQUAREFREE_BOUND);
        if c >= &b * &b * &b {
            return Err(Error::FactoringBoundExceeded {
                bound: SQUAREFREE_BOUND,
                cofactor: c.to_string(),
            });
        }
        let s = c.sqrt();
        if &s * &s == c {
            p *= s;
        } else {
            a *= c;
        }
    }
    Ok((a, p))
}

/// The canonical simple value of the class of `params`. `T = 0` gives
/// `a = 1, P = 0, R = 1`.
pub fn simple_value(params: &LucasParams) -> Result<SimpleValue> {
    if params.t.is_zero() {
        return Ok(SimpleValue {
            a: BigInt::one(),
            p: BigInt::zero(),
            r: BigInt::one(),
        });
    }
    let t2 = &params.t * &params.t;
    let g = t2.gcd(&params.q);
    let n = &t2 / &g;
    let r = &params.q / &g;
    let (a, p) = squarefree_decomposition(&n)?;
    let a = if r.is_negative() { -a } else { a };
    Ok(SimpleValue { a, p, r: r.abs() })
}

/// The two simple representatives `(aP, aR)` and `(-aP, aR)`.
pub fn simple_values(params: &LucasParams) -> Result<(LucasParams, LucasParams)> {
    let s = simple_value(params)?;
    Ok((s.params(), s.negated_params()))
}

/// One of the six square conditions on `(T, Q)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SquareFlag {
    pub name: String,
    pub value: BigInt,
    pub is_square: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParamsClassification {
    pub params: LucasParams,
    pub trace: RationalTrace,
    pub classification: TraceClassification,
    /// `Q, -D, -DQ, 2Q, -2D, -2DQ`, in that order.
    pub flags: Vec<SquareFlag>,
}

impl ParamsClassification {
    pub fn flag(&self, name: &str) -> Option<bool> {
        self.flags.iter().find(|f| f.name == name).map(|f| f.is_square)
    }

    /// Names of the conditions that are squares.
    pub fn violated(&self) -> Vec<&str> {
        self.flags
            .iter()
            .filter(|f| f.is_square)
            .map(|f| f.name.as_str())
            .collect()
    }

    /// The tag read off the six `(T, Q)` conditions alone, for primitive
    /// pairs with `T != 0`. `None` when not primitive, and for circular
    /// pairs with `2Q` a square, which need the associate chain.
    pub fn tag_from_flags(&self) -> Option<TraceClassification> {
        let f = |n| self.flag(n).unwrap_or(false);
        if self.params.t.is_zero() || f("Q") || f("-DQ") {
            return None;
        }
        Some(if self.violated().is_empty() {
            TraceClassification::Generic
        } else if f("-2D") {
            TraceClassification::CaseB
        } else if f("-D") {
            if f("2Q") {
                return None;
            }
            TraceClassification::CaseC
        } else if f("2Q") || f("-2DQ") {
            TraceClassification::CaseA
        } else {
            return None;
        })
    }
}

/// The tag of `trace_of(params)` with the six square conditions.
pub fn classify_params(params: &LucasParams) -> ParamsClassification {
    let d = params.discriminant();
    let q = &params.q;
    let two = BigInt::from(2);
    let values: [(&'static str, BigInt); 6] = [
        ("Q", q.clone()),
        ("-D", -&d),
        ("-DQ", -&d * q),
        ("2Q", &two * q),
        ("-2D", -&two * &d),
        ("-2DQ", -&two * &d * q),
    ];
    let flags = values
        .into_iter()
        .map(|(name, value)| SquareFlag {
            name: name.to_string(),
            is_square: is_square_rational(&RationalTrace::from(value.clone())),
            value,
        })
        .collect();
    let trace = trace_of(params);
    ParamsClassification {
        params: params.clone(),
        classification: classify_trace(&trace),
        trace,
        flags,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(t: i64, q: i64) -> LucasParams {
        LucasParams::new(t, q).unwrap()
    }

    #[test]
    fn fibonacci_and_lucas() {
        let f = lp(1, -1);
        assert_eq!(dickson(DicksonKind::L, 5, &f), BigInt::from(5));
        assert_eq!(dickson(DicksonKind::K, 4, &f), BigInt::from(7));
        assert_eq!(dickson(DicksonKind::L, 0, &f), BigInt::zero());
        assert_eq!(dickson(DicksonKind::K, 0, &f), BigInt::from(2));
        for n in 0..60 {
            for kind in [DicksonKind::L, DicksonKind::K] {
                assert_eq!(dickson(kind, n, &f), dickson_matrix(kind, n, &f));
            }
        }
        assert_eq!(
            dickson_mod(DicksonKind::L, 10, &f, 11).unwrap().value(),
            55 % 11
        );
        assert!(LucasParams::new(1, 0).is_err());
    }

    #[test]
    fn traces_and_similarity() {
        assert_eq!(trace_of(&lp(1, -2)).to_string(), "-5/2");
        assert_eq!(trace_of(&lp(2, 3)).to_string(), "-2/3");
        assert_eq!(trace_of(&lp(5, 1)).to_string(), "23");
        assert!(!similar(&lp(1, -2), &lp(9, 18)));
        assert!(similar(&lp(9, 18), &lp(3, 2)));
        assert!(similar(&lp(7, 3), &lp(-7, 3)));
        assert!(similar(&lp(2, 4), &lp(1, 1)));
        assert!(!similar(&lp(2, 3), &lp(2, -3)));
    }

    #[test]
    fn twins() {
        assert_eq!(twin_params(&lp(1, -2)), lp(9, 18));
        assert_eq!(twin_params(&lp(2, 1)), lp(0, 1));
        for (t, q) in [(1, -2), (2, 3), (5, 7), (-3, 11), (4, -5)] {
            let x = lp(t, q);
            assert!(similar(&twin_params(&twin_params(&x)), &x));
            assert_eq!(trace_of(&twin_params(&x)), -trace_of(&x));
            assert!(similar(&psi(&twin_params(&x)), &psi(&x)));
        }
    }

    #[test]
    fn simple_value_examples() {
        let sv = |t, q| simple_value(&lp(t, q)).unwrap();
        let s = sv(6, 3);
        assert_eq!((s.a, s.p, s.r), (3.into(), 2.into(), 1.into()));
        let s = sv(2, 4);
        assert_eq!((s.a, s.p, s.r), (1.into(), 1.into(), 1.into()));
        let s = sv(1, -2);
        assert_eq!((s.a.clone(), s.p.clone(), s.r.clone()), ((-1).into(), 1.into(), 2.into()));
        assert!(similar(&s.params(), &lp(1, -2)));
        assert!(similar(&s.negated_params(), &lp(1, -2)));
        let s = sv(12, 50);
        assert_eq!((s.a, s.p, s.r), (2.into(), 6.into(), 25.into()));
        let s = sv(0, 5);
        assert_eq!((s.a, s.p, s.r), (1.into(), 0.into(), 1.into()));
    }

    #[test]
    fn simple_twins_satisfy_circle_relation() {
        // (aP, aR) and (bS, bR) are twins iff aP^2 + bS^2 = 4R.
        for (t, q) in [(1, -2), (2, 3), (5, 7), (3, 2), (7, -6)] {
            let x = simple_value(&lp(t, q)).unwrap();
            let y = simple_value(&twin_params(&lp(t, q))).unwrap();
            assert_eq!(x.r, y.r);
            assert_eq!(&x.a * &x.p * &x.p + &y.a * &y.p * &y.p, BigInt::from(4) * &x.r);
        }
    }

    #[test]
    fn roots_square_back() {
        for (t, r) in [(1, 2), (3, 5), (-4, 3), (0, 7)] {
            let x = lp(t, r * r);
            let rs = param_roots(&x);
            assert!(!rs.is_empty());
            for root in rs {
                assert!(similar(&psi(&root), &x));
            }
        }
        assert!(param_roots(&lp(3, -1)).is_empty());
        assert_eq!(param_roots(&lp(5, 1)), vec![lp(7, 7), lp(-3, -3)]);
    }

    #[test]
    fn flag_examples() {
        let c = classify_params(&lp(1, -2));
        assert_eq!(c.violated(), vec!["-2DQ"]);
        assert_eq!(c.classification, TraceClassification::CaseA);
        let c = classify_params(&lp(3, 2));
        assert_eq!(c.violated(), vec!["2Q"]);
        assert_eq!(c.classification, TraceClassification::CaseA);
        let c = classify_params(&lp(2, 3));
        assert_eq!(c.violated(), vec!["-2D"]);
        assert_eq!(c.flags[4].value, BigInt::from(16));
        assert_eq!(c.classification, TraceClassification::CaseB);
    }

    #[test]
    fn flags_agree_with_trace_tags() {
        for t in -12i64..=12 {
            for q in -12i64..=12 {
                if q == 0 {
                    continue;
                }
                let c = classify_params(&lp(t, q));
                if let Some(tag) = c.tag_from_flags() {
                    assert_eq!(tag, c.classification, "({t}, {q})");
                }
            }
        }
    }
}
