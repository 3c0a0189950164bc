//! Classification of rational traces, reduction through roots and associates,
//! and the exact density profile of every non-trivial partition.

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::{rational_mod, RationalTrace};
use crate::cheb::c;
use crate::error::{Error, Result};
use crate::partition::{classify_prime, PartitionClass};

/// Default bound on root and associate chains.
pub const DEFAULT_MAX_DEPTH: usize = 64;

fn int(n: i64) -> RationalTrace {
    RationalTrace::from_int(n)
}

fn frac(n: i64, d: i64) -> RationalTrace {
    RationalTrace::new(n, d).expect("nonzero literal denominator")
}

/// The six square tests on `a = 2+q`, `b = 2-q` that drive classification.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TracePredicates {
    /// `2+q` is a square.
    pub plus: bool,
    /// `2-q` is a square.
    pub minus: bool,
    /// `4-q^2` is a square (`q` is circular).
    pub circular: bool,
    /// `2(2+q)` is a square.
    pub two_plus: bool,
    /// `2(2-q)` is a square.
    pub two_minus: bool,
    /// `2(4-q^2)` is a square.
    pub two_circular: bool,
}

impl TracePredicates {
    pub fn of(q: &RationalTrace) -> Self {
        let two = int(2);
        let a = &two + q;
        let b = &two - q;
        let ab = &a * &b;
        TracePredicates {
            plus: a.is_square(),
            minus: b.is_square(),
            circular: ab.is_square(),
            two_plus: (&two * &a).is_square(),
            two_minus: (&two * &b).is_square(),
            two_circular: (&two * &ab).is_square(),
        }
    }

    /// Neither `2+q` nor `2-q` is a square.
    pub fn primitive(&self) -> bool {
        !self.plus && !self.minus
    }

    /// None of the six numbers is a square.
    pub fn generic(&self) -> bool {
        !(self.plus
            || self.minus
            || self.circular
            || self.two_plus
            || self.two_minus
            || self.two_circular)
    }
}

/// True iff none of `a, b, ab, 2a, 2b, 2ab` is a rational square.
pub fn is_generic_pair(a: &RationalTrace, b: &RationalTrace) -> bool {
    let two = int(2);
    let ab = a * b;
    ![a.clone(), b.clone(), &two * a, &two * b, &two * &ab, ab]
        .iter()
        .any(RationalTrace::is_square)
}

/// The structural type of a rational trace. Exactly one tag applies.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "tag")]
pub enum TraceClassification {
    /// `q ∈ {0, ±1, ±2}`: a single nonempty class.
    Trivial,
    /// `(2+q, 2-q)` is a generic pair.
    Generic,
    /// Primitive, not circular, and `2(2+q)` or `2(2-q)` is a square.
    CaseA,
    /// Primitive and `2(4-q^2)` is a square.
    CaseB,
    /// Circular with `2+q` and `2(2+q)` both non-squares.
    CaseC,
    /// `q = r^2 - 2` with `r = sqrt(2+q) >= 0`.
    HasRoot { root: RationalTrace },
    /// `-q = r^2 - 2` while `2+q` is not a square.
    TwinRoot { root: RationalTrace },
    /// Primitive and circular whose associate is not primitive. `core` is
    /// the circular-primitive trace reached after `depth` reductions.
    CircularNonPrimitive {
        associate: RationalTrace,
        core: RationalTrace,
        depth: usize,
    },
}

impl TraceClassification {
    pub fn is_primitive(&self) -> bool {
        !matches!(
            self,
            TraceClassification::Trivial
                | TraceClassification::HasRoot { .. }
                | TraceClassification::TwinRoot { .. }
        )
    }

    pub fn name(&self) -> &'static str {
        match self {
            TraceClassification::Trivial => "Trivial",
            TraceClassification::Generic => "Generic",
            TraceClassification::CaseA => "CaseA",
            TraceClassification::CaseB => "CaseB",
            TraceClassification::CaseC => "CaseC",
            TraceClassification::HasRoot { .. } => "HasRoot",
            TraceClassification::TwinRoot { .. } => "TwinRoot",
            TraceClassification::CircularNonPrimitive { .. } => "CircularNonPrimitive",
        }
    }
}

impl fmt::Display for TraceClassification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TraceClassification::HasRoot { root } => write!(f, "HasRoot({root})"),
            TraceClassification::TwinRoot { root } => write!(f, "TwinRoot({root})"),
            TraceClassification::CircularNonPrimitive {
                associate,
                core,
                depth,
            } => write!(
                f,
                "CircularNonPrimitive(associate={associate}, core={core}, depth={depth})"
            ),
            other => f.write_str(other.name()),
        }
    }
}

pub fn is_trivial(q: &RationalTrace) -> bool {
    q.is_integer() && (-2..=2).map(int).any(|t| &t == q)
}

/// `-q`.
pub fn twin(q: &RationalTrace) -> RationalTrace {
    -q
}

/// `q^2 - 2`, the trace of the squared partition.
pub fn square(q: &RationalTrace) -> RationalTrace {
    q * q - int(2)
}

/// `{+sqrt(2+q), -sqrt(2+q)}`, positive first; a single `0` for `q = -2`.
pub fn roots(q: &RationalTrace) -> Vec<RationalTrace> {
    match (q + int(2)).sqrt() {
        None => Vec::new(),
        Some(r) if r.is_zero() => vec![r],
        Some(r) => {
            let neg = -&r;
            vec![r, neg]
        }
    }
}

/// The `w >= 0` with `q^2 + w^2 = 4`.
pub fn associate(q: &RationalTrace) -> Result<RationalTrace> {
    (int(4) - q * q)
        .sqrt()
        .ok_or_else(|| Error::NotCircular(q.to_string()))
}

/// Follows roots of `±x` until a primitive trace remains; returns it with
/// the number of steps.
fn descend_roots(
    x: &RationalTrace,
    seen: &mut HashSet<RationalTrace>,
    max_depth: usize,
) -> Result<(RationalTrace, usize)> {
    let mut x = x.clone();
    let mut steps = 0;
    loop {
        let next = (int(2) + &x).sqrt().or_else(|| (int(2) - &x).sqrt());
        let Some(r) = next else {
            return Ok((x, steps));
        };
        if !seen.insert(r.clone()) || seen.len() > max_depth {
            return Err(Error::ReductionDepth(x.to_string(), max_depth));
        }
        x = r;
        steps += 1;
    }
}

/// Core and depth of a primitive circular `q` with non-primitive associate.
fn circular_reduction(
    q: &RationalTrace,
    seen: &mut HashSet<RationalTrace>,
    max_depth: usize,
) -> Result<(RationalTrace, RationalTrace, usize)> {
    let w = associate(q)?;
    let (end, steps) = descend_roots(&w, seen, max_depth)?;
    if !TracePredicates::of(&end).two_plus {
        return Ok((w, end, steps));
    }
    // The endpoint is itself paired with a non-primitive associate.
    let (_, core, inner) = circular_reduction(&end, seen, max_depth)?;
    Ok((w, core, steps + inner))
}

/// [`classify_trace`] with an explicit bound on reduction chains.
pub fn classify_trace_bounded(q: &RationalTrace, max_depth: usize) -> Result<TraceClassification> {
    if is_trivial(q) {
        return Ok(TraceClassification::Trivial);
    }
    let pr = TracePredicates::of(q);
    let tag = if pr.plus {
        TraceClassification::HasRoot {
            root: (int(2) + q).sqrt().expect("2+q is a square"),
        }
    } else if pr.minus {
        TraceClassification::TwinRoot {
            root: (int(2) - q).sqrt().expect("2-q is a square"),
        }
    } else if pr.circular {
        if pr.two_plus {
            let mut seen = HashSet::from([q.clone()]);
            let (associate, core, depth) = circular_reduction(q, &mut seen, max_depth)?;
            TraceClassification::CircularNonPrimitive {
                associate,
                core,
                depth,
            }
        } else {
            TraceClassification::CaseC
        }
    } else if pr.two_plus || pr.two_minus {
        TraceClassification::CaseA
    } else if pr.two_circular {
        TraceClassification::CaseB
    } else {
        TraceClassification::Generic
    };
    Ok(tag)
}

/// The structural type of `q`.
///
/// Every reduction step at least halves the bit length of the numerator, so
/// a chain longer than [`DEFAULT_MAX_DEPTH`] cannot arise from a
/// representable rational.
pub fn classify_trace(q: &RationalTrace) -> TraceClassification {
    classify_trace_bounded(q, DEFAULT_MAX_DEPTH)
        .unwrap_or_else(|e| panic!("classify_trace({q}): {e}"))
}

/// Exact densities `|Π_s|` for `s >= 0`: `d0`, `d1`, then `head = d_2 …
/// d_{s*}` with `d_{s+1} = d_s / 2` for `s >= s* = dyadic_from`.
///
/// Canonical form: `s* >= 2` is as small as possible.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DensityProfile {
    pub d0: RationalTrace,
    pub d1: RationalTrace,
    pub head: Vec<RationalTrace>,
    pub dyadic_from: u32,
    /// `d0 + d1 + d_2 + … + d_{s*-1} + 2 d_{s*}`; always exactly 1.
    pub total: RationalTrace,
}

impl DensityProfile {
    /// Builds and canonicalizes a profile; the entries must lie in `[0,1]`
    /// and sum to 1.
    pub fn new(
        d0: RationalTrace,
        d1: RationalTrace,
        mut head: Vec<RationalTrace>,
    ) -> Result<Self> {
        if head.is_empty() {
            return Err(Error::InvariantViolation(
                "density profile needs d_2".to_string(),
            ));
        }
        while head.len() >= 2 && head[head.len() - 2] == &head[head.len() - 1] * int(2) {
            head.pop();
        }
        let last = head.last().expect("nonempty").clone();
        let mut total = &d0 + &d1 + &last;
        for x in &head {
            total = total + x;
        }
        let unit = |x: &RationalTrace| !x.is_negative() && x <= &RationalTrace::one();
        if total != RationalTrace::one() || !unit(&d0) || !unit(&d1) || !head.iter().all(unit) {
            return Err(Error::InvariantViolation(format!(
                "density profile ({d0}, {d1}, {head:?}) sums to {total}"
            )));
        }
        Ok(DensityProfile {
            dyadic_from: head.len() as u32 + 1,
            d0,
            d1,
            head,
            total,
        })
    }

    /// `|Π_s|`.
    pub fn d(&self, s: u32) -> RationalTrace {
        match s {
            0 => self.d0.clone(),
            1 => self.d1.clone(),
            s if s <= self.dyadic_from => self.head[s as usize - 2].clone(),
            s => {
                let last = self.head.last().expect("nonempty");
                last * &int(2).pow(-((s - self.dyadic_from) as i32))
            }
        }
    }

    /// `|Π_s|` for `PartitionClass::Pi(s)` and friends; 0 for denominator
    /// divisors, which have density zero.
    pub fn of_class(&self, c: PartitionClass) -> RationalTrace {
        c.index().map_or_else(RationalTrace::zero, |s| self.d(s))
    }

    /// `|Π_*| = Σ_{s>=2} |Π_s|`.
    pub fn star(&self) -> RationalTrace {
        RationalTrace::one() - &self.d0 - &self.d1
    }

    /// `(d_0, …, d_{s_max})` as floats.
    pub fn to_f64_vec(&self, s_max: u32) -> Vec<f64> {
        (0..=s_max).map(|s| self.d(s).to_f64()).collect()
    }

    /// The profile of `r^2 - 2`: `Π_0` absorbs `Π_0 ∪ Π_1` and the rest
    /// shifts down by one.
    pub fn squared(&self) -> Result<Self> {
        let top = self.dyadic_from.max(3);
        let head = (3..=top).map(|s| self.d(s)).collect();
        DensityProfile::new(&self.d0 + &self.d1, self.d(2), head)
    }

    /// The profile of `-q`.
    pub fn twin(&self) -> Self {
        DensityProfile {
            d0: self.d1.clone(),
            d1: self.d0.clone(),
            ..self.clone()
        }
    }

    /// The profile of a primitive trace whose associate has this profile:
    /// `Π_2` and `Π_0 ∪ Π_1` trade places, `Π_0` and `Π_1` split evenly.
    pub fn associated(&self) -> Result<Self> {
        let half = self.d(2) / int(2);
        let top = self.dyadic_from.max(3);
        let mut head = vec![&self.d0 + &self.d1];
        head.extend((3..=top).map(|s| self.d(s)));
        DensityProfile::new(half.clone(), half, head)
    }
}

impl fmt::Display for DensityProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}", self.d0, self.d1)?;
        for x in &self.head {
            write!(f, ", {x}")?;
        }
        write!(f, ", … dyadic from s={})", self.dyadic_from)
    }
}

fn base_profile(d0: RationalTrace, head: Vec<RationalTrace>) -> DensityProfile {
    DensityProfile::new(d0.clone(), d0, head).expect("base profiles sum to 1")
}

/// The circular non-primitive profile at depth `k >= 1`:
/// `|Π_0| = |Π_1| = 2^{-(k+1)}/3`, `|Π_2| = 1 - 2^{-(k-1)}/3`, `|Π_3| = 2^{-k}/6`.
pub fn circular_depth_profile(k: usize) -> Result<DensityProfile> {
    if k == 0 {
        return Err(Error::InvalidArgument(
            "circular reduction depth must be positive".to_string(),
        ));
    }
    let k = k as i32;
    let third = frac(1, 3);
    let two = int(2);
    let d01 = &third * &two.pow(-(k + 1));
    let d2 = RationalTrace::one() - &third * &two.pow(-(k - 1));
    let d3 = frac(1, 6) * two.pow(-k);
    DensityProfile::new(d01.clone(), d01, vec![d2, d3])
}

/// [`theoretical_densities`] with an explicit chain bound.
pub fn theoretical_densities_bounded(q: &RationalTrace, max_depth: usize) -> Result<DensityProfile> {
    let mut q = q.clone();
    let mut pending: Vec<bool> = Vec::new(); // true: square step, false: twin step
    let base = loop {
        if pending.len() > 2 * max_depth {
            return Err(Error::ReductionDepth(q.to_string(), max_depth));
        }
        match classify_trace_bounded(&q, max_depth)? {
            TraceClassification::Trivial => return Err(Error::TrivialTrace(q.to_string())),
            TraceClassification::Generic => {
                break base_profile(frac(1, 3), vec![frac(1, 6)]);
            }
            TraceClassification::CaseA => {
                break base_profile(frac(7, 24), vec![frac(1, 3), frac(1, 24)]);
            }
            TraceClassification::CaseB => {
                break base_profile(frac(7, 24), vec![frac(1, 12), frac(1, 6)]);
            }
            TraceClassification::CaseC => {
                break base_profile(frac(1, 6), vec![frac(1, 3)]);
            }
            TraceClassification::CircularNonPrimitive { depth, .. } => {
                break circular_depth_profile(depth)?;
            }
            TraceClassification::HasRoot { root } => {
                pending.push(true);
                q = root;
            }
            TraceClassification::TwinRoot { .. } => {
                pending.push(false);
                q = -q;
            }
        }
    };
    pending.iter().rev().try_fold(base, |prof, &sq| {
        if sq {
            prof.squared()
        } else {
            Ok(prof.twin())
        }
    })
}

/// Exact densities of every class in the partition of `q`.
pub fn theoretical_densities(q: &RationalTrace) -> Result<DensityProfile> {
    theoretical_densities_bounded(q, DEFAULT_MAX_DEPTH)
}

/// `⋃_{i ∈ classes} Π_i(trace)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassUnion {
    pub trace: RationalTrace,
    pub classes: Vec<u32>,
}

impl ClassUnion {
    fn new(trace: &RationalTrace, classes: impl IntoIterator<Item = u32>) -> Self {
        ClassUnion {
            trace: trace.clone(),
            classes: classes.into_iter().collect(),
        }
    }
}

impl fmt::Display for ClassUnion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .classes
            .iter()
            .map(|i| format!("Π_{i}({})", self.trace))
            .collect();
        f.write_str(&parts.join(" ∪ "))
    }
}

/// A set equality between classes of two partitions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum PartitionRelation {
    /// The two unions are equal.
    Union { lhs: ClassUnion, rhs: ClassUnion },
    /// `Π_s(lhs) = Π_{s+offset}(rhs)` for every `s >= from`.
    Shifted {
        lhs: RationalTrace,
        rhs: RationalTrace,
        from: u32,
        offset: u32,
    },
    /// `ρ(lhs) = ρ(rhs)` class by class, where `lhs = label` evaluated.
    Coincide {
        label: String,
        lhs: RationalTrace,
        rhs: RationalTrace,
    },
}

fn class_index(q: &RationalTrace, p: u64) -> Option<u32> {
    rational_mod(q, p).ok()?;
    classify_prime(q, p).index()
}

impl PartitionRelation {
    fn traces(&self) -> (&RationalTrace, &RationalTrace) {
        match self {
            PartitionRelation::Union { lhs, rhs } => (&lhs.trace, &rhs.trace),
            PartitionRelation::Shifted { lhs, rhs, .. }
            | PartitionRelation::Coincide { lhs, rhs, .. } => (lhs, rhs),
        }
    }

    /// Checks the relation at the odd prime `p`; `None` when `p` divides a
    /// denominator of either trace.
    pub fn holds_at(&self, p: u64) -> Result<Option<bool>> {
        crate::sl2::check_odd_prime(p)?;
        let (l, r) = self.traces();
        let (Some(a), Some(b)) = (class_index(l, p), class_index(r, p)) else {
            return Ok(None);
        };
        Ok(Some(match self {
            PartitionRelation::Union { lhs, rhs } => {
                lhs.classes.contains(&a) == rhs.classes.contains(&b)
            }
            PartitionRelation::Shifted { from, offset, .. } => {
                (a < *from || b == a + offset) && (b < from + offset || a + offset == b)
            }
            PartitionRelation::Coincide { .. } => a == b,
        }))
    }
}

impl fmt::Display for PartitionRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PartitionRelation::Union { lhs, rhs } => write!(f, "{lhs} = {rhs}"),
            PartitionRelation::Shifted {
                lhs,
                rhs,
                from,
                offset,
            } => {
                if *offset == 0 {
                    write!(f, "Π_s({lhs}) = Π_s({rhs}) for s >= {from}")
                } else {
                    write!(f, "Π_s({lhs}) = Π_{{s+{offset}}}({rhs}) for s >= {from}")
                }
            }
            PartitionRelation::Coincide { label, lhs, rhs } => {
                write!(f, "ρ({label}) = ρ({lhs}) coincides with ρ({rhs})")
            }
        }
    }
}

/// Relations tying `ρ(q)` to its twin, square, odd Chebyshev images, the
/// partition of `C_4(q)` and, when circular, its associate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationReport {
    pub q: RationalTrace,
    pub relations: Vec<PartitionRelation>,
}

impl RelationReport {
    pub fn lines(&self) -> Vec<String> {
        self.relations.iter().map(ToString::to_string).collect()
    }
}

pub fn relate_partitions(q: &RationalTrace) -> RelationReport {
    use PartitionRelation::*;
    let mut rel = Vec::new();
    let t = twin(q);
    rel.push(Union {
        lhs: ClassUnion::new(&t, [0]),
        rhs: ClassUnion::new(q, [1]),
    });
    rel.push(Union {
        lhs: ClassUnion::new(&t, [1]),
        rhs: ClassUnion::new(q, [0]),
    });
    rel.push(Shifted {
        lhs: t,
        rhs: q.clone(),
        from: 2,
        offset: 0,
    });

    let q2 = square(q);
    rel.push(Union {
        lhs: ClassUnion::new(&q2, [0]),
        rhs: ClassUnion::new(q, [0, 1]),
    });
    rel.push(Shifted {
        lhs: q2,
        rhs: q.clone(),
        from: 1,
        offset: 1,
    });

    let q4 = c(4, q);
    rel.push(Union {
        lhs: ClassUnion::new(&q4, [0]),
        rhs: ClassUnion::new(q, [0, 1, 2]),
    });
    rel.push(Union {
        lhs: ClassUnion::new(&q4, [1]),
        rhs: ClassUnion::new(q, [3]),
    });
    rel.push(Union {
        lhs: ClassUnion::new(&-&q4, [0]),
        rhs: ClassUnion::new(q, [3]),
    });

    for n in [3u64, 5] {
        rel.push(Coincide {
            label: format!("C_{n}({q})"),
            lhs: c(n, q),
            rhs: q.clone(),
        });
    }

    if let Ok(w) = associate(q) {
        rel.push(Union {
            lhs: ClassUnion::new(&w, [2]),
            rhs: ClassUnion::new(q, [0, 1]),
        });
        rel.push(Union {
            lhs: ClassUnion::new(q, [2]),
            rhs: ClassUnion::new(&w, [0, 1]),
        });
        rel.push(Shifted {
            lhs: w,
            rhs: q.clone(),
            from: 3,
            offset: 0,
        });
    }
    RelationReport {
        q: q.clone(),
        relations: rel,
    }
}
