//! One handler per subcommand. Each builds a typed payload, then renders it
//! as an aligned text table or as JSON.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::json;

use super::{
    Command, GlobalArgs, MapArg, Outcome, PrimeSelection, EXIT_DENSITY_FAIL, EXIT_INVARIANT,
    EXIT_OK,
};
use crate::arith::{is_odd_prime, primes_up_to, RationalTrace};
use crate::density::{
    cache::default_cache_dir, cell_census, compare_with, CacheStatus, CellCensus,
    CensusOptions, DensityReport,
};
use crate::dynamics::{
    chebyshev_map_orbit_capped, orbit_divisor_report, rotation_orbit, Orbit,
    OrbitDivisorReport,
};
use crate::error::{Error, Result};
use crate::lucas::{
    classify_params, divisor_routes, simple_value, twin_params, LucasParams,
    ParamsClassification, SimpleValue,
};
use crate::partition::{
    cell_assignment, check_admissible, classify_prime_detailed, r_depth, Cell, CellAssignment,
    PartitionClass,
};
use crate::traceclass::{
    classify_trace, is_trivial, relate_partitions, theoretical_densities, DensityProfile,
    PartitionRelation, TraceClassification,
};
use crate::verify::{run_suite, SuiteReport};

/// Depth to which `classify` follows the cell tables.
const CELL_PATH_DEPTH: u32 = 16;

fn parse_q(s: &str) -> Result<RationalTrace> {
    s.parse()
}

fn primes_of(sel: &PrimeSelection) -> Result<Vec<u64>> {
    match (sel.prime, sel.limit) {
        // The library only checks oddness; composites would reach sqrt_mod.
        (Some(p), _) if is_odd_prime(p) => Ok(vec![p]),
        (Some(p), _) => Err(Error::NotOddPrime(p)),
        (None, Some(n)) if n >= 3 => Ok(primes_up_to(n).into_iter().skip(1).collect()),
        (None, Some(n)) => Err(Error::InvalidArgument(format!("limit {n} is below 3"))),
        (None, None) => Err(Error::InvalidArgument("give --prime or --limit".into())),
    }
}

fn to_value<T: Serialize>(x: &T) -> serde_json::Value {
    serde_json::to_value(x).expect("payloads serialize")
}

/// The arguments echoed in the JSON envelope.
pub fn parameters(c: &Command) -> serde_json::Value {
    let sel = |s: &PrimeSelection| json!({ "prime": s.prime, "limit": s.limit });
    match c {
        Command::Classify { q, primes } => json!({ "q": q, "primes": sel(primes) }),
        Command::Density {
            q,
            limit,
            tolerance,
            cells,
        } => json!({ "q": q, "limit": limit, "tolerance": tolerance, "cells": cells }),
        Command::Verify { suite, limit } => {
            json!({ "suite": crate::verify::Suite::from(*suite).name(), "limit": limit })
        }
        Command::Trace { q } => json!({ "q": q }),
        Command::Lucas { t, det, primes } => json!({ "t": t, "det": det, "primes": sel(primes) }),
        Command::Orbit {
            map,
            degree,
            q0,
            w1,
            steps,
            factor_bound,
            max_steps,
        } => json!({
            "map": match map { MapArg::Rotation => "rotation", MapArg::Cheb => "cheb" },
            "degree": degree,
            "q0": q0,
            "w1": w1,
            "steps": steps,
            "factor_bound": factor_bound,
            "max_steps": max_steps,
        }),
    }
}

pub fn dispatch(c: &Command, g: &GlobalArgs) -> Result<Outcome> {
    match c {
        Command::Classify { q, primes } => {
            let payload = classify(&parse_q(q)?, &primes_of(primes)?)?;
            Ok(done(&payload, payload.render(), EXIT_OK, None))
        }
        Command::Density {
            q,
            limit,
            tolerance,
            cells,
        } => {
            let opts = CensusOptions {
                threads: g.threads,
                cache_dir: (!g.no_cache).then(default_cache_dir),
            };
            let (payload, status) = density(&parse_q(q)?, *limit, *tolerance, *cells, &opts)?;
            let hit = match status {
                CacheStatus::Disabled => None,
                CacheStatus::Miss => Some(false),
                CacheStatus::Hit | CacheStatus::Prefix(_) => Some(true),
            };
            let exit = if payload.pass() {
                EXIT_OK
            } else {
                EXIT_DENSITY_FAIL
            };
            Ok(done(&payload, payload.render(), exit, hit))
        }
        Command::Verify { suite, limit } => {
            let rep = run_suite((*suite).into(), *limit)?;
            let exit = if rep.holds() { EXIT_OK } else { EXIT_INVARIANT };
            Ok(done(&rep, render_suite(&rep), exit, None))
        }
        Command::Trace { q } => {
            let payload = trace(&parse_q(q)?)?;
            Ok(done(&payload, payload.render(), EXIT_OK, None))
        }
        Command::Lucas { t, det, primes } => {
            let payload = lucas(&LucasParams::new(*t, *det)?, &primes_of(primes)?)?;
            let exit = if payload.routes.iter().all(|r| r.agree) {
                EXIT_OK
            } else {
                EXIT_INVARIANT
            };
            Ok(done(&payload, payload.render(), exit, None))
        }
        Command::Orbit {
            map,
            degree,
            q0,
            w1,
            steps,
            factor_bound,
            max_steps,
        } => {
            let q0 = parse_q(q0)?;
            let orbit = match map {
                MapArg::Rotation => {
                    let w1 = w1.as_deref().map(parse_q).transpose()?;
                    rotation_orbit(&q0, w1.as_ref(), *steps)?
                }
                MapArg::Cheb => chebyshev_map_orbit_capped(*degree, &q0, *steps, *max_steps)?,
            };
            let report = orbit_divisor_report(&orbit, *factor_bound);
            let payload = OrbitPayload { orbit, report };
            let exit = if payload.report.holds() {
                EXIT_OK
            } else {
                EXIT_INVARIANT
            };
            Ok(done(&payload, payload.render(), exit, None))
        }
    }
}

fn done<T: Serialize>(payload: &T, text: String, exit: i32, cache_hit: Option<bool>) -> Outcome {
    Outcome {
        result: to_value(payload),
        text,
        exit,
        cache_hit,
    }
}

// ---- classify ----

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassifyRow {
    pub p: u64,
    pub class: PartitionClass,
    pub xi: Option<u64>,
    pub delta_symbol: Option<i8>,
    /// Cells of the tables `p` passes through, from depth 1; empty for
    /// inadmissible `p`.
    pub cells: Vec<CellAssignment>,
}

impl ClassifyRow {
    pub fn cell_path(&self) -> String {
        if self.cells.is_empty() {
            return "-".to_string();
        }
        let names: Vec<String> = self
            .cells
            .iter()
            .map(|c| {
                let k = c.k;
                match c.cell {
                    Cell::BothR => format!("R{k}"),
                    Cell::NeitherZ => format!("Z{k}"),
                    Cell::OmegaPlusOnly => format!("O+{k}"),
                    Cell::OmegaMinusOnly => format!("O-{k}"),
                }
            })
            .collect();
        names.join(">")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassifyPayload {
    pub q: RationalTrace,
    pub rows: Vec<ClassifyRow>,
}

pub fn classify(q: &RationalTrace, primes: &[u64]) -> Result<ClassifyPayload> {
    let mut rows = Vec::with_capacity(primes.len());
    for &p in primes {
        let d = classify_prime_detailed(q, p)?;
        let mut cells = Vec::new();
        if check_admissible(q, p).is_ok() {
            let depth = r_depth(q, p, CELL_PATH_DEPTH)?;
            for k in 1..=(depth + 1).min(CELL_PATH_DEPTH) {
                cells.push(cell_assignment(q, p, k)?);
            }
        }
        rows.push(ClassifyRow {
            p,
            class: d.class,
            xi: d.appearance.map(|a| a.xi),
            delta_symbol: d.appearance.map(|a| a.delta_symbol),
            cells,
        });
    }
    Ok(ClassifyPayload {
        q: q.clone(),
        rows,
    })
}

impl ClassifyPayload {
    pub fn render(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "q = {}", self.q);
        let _ = writeln!(s, "{:>10}  {:<20} {:>10} {:>4}  cells", "p", "class", "xi", "d|p");
        for r in &self.rows {
            let opt = |x: Option<String>| x.unwrap_or_else(|| "-".into());
            let _ = writeln!(
                s,
                "{:>10}  {:<20} {:>10} {:>4}  {}",
                r.p,
                r.class.to_string(),
                opt(r.xi.map(|x| x.to_string())),
                opt(r.delta_symbol.map(|x| x.to_string())),
                r.cell_path()
            );
        }
        s
    }
}

// ---- density ----

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DensityPayload {
    pub report: DensityReport,
    pub cells: Option<CellCensus>,
}

impl DensityPayload {
    pub fn pass(&self) -> bool {
        self.report.pass()
    }

    pub fn render(&self) -> String {
        let r = &self.report;
        let mut s = String::new();
        let _ = writeln!(
            s,
            "q = {}  limit = {}  classified = {}  excluded = {}",
            r.census.q,
            r.census.limit,
            r.census.classified(),
            r.census.excluded
        );
        let _ = writeln!(s, "profile {}", r.profile);
        let _ = writeln!(
            s,
            "{:<8} {:>9} {:>10} {:>10} {:>10}  verdict",
            "class", "count", "observed", "exact", "deviation"
        );
        for c in &r.classes {
            let _ = writeln!(
                s,
                "{:<8} {:>9} {:>10.6} {:>10.6} {:>10.6}  {}",
                c.class.to_string(),
                c.count,
                c.empirical_f64,
                c.theoretical_f64,
                c.deviation_f64,
                if c.within_tolerance { "PASS" } else { "FAIL" }
            );
        }
        for d in r.dyadic.iter().take(5) {
            if let Some(x) = d.ratio {
                let _ = writeln!(s, "count Pi({}) / count Pi({}) = {x:.4}", d.s + 1, d.s);
            }
        }
        if let Some(cc) = &self.cells {
            let n = cc.admissible.max(1) as f64;
            let _ = writeln!(s, "cells over {} admissible primes", cc.admissible);
            let _ = writeln!(
                s,
                "{:>3} {:>10} {:>10} {:>10} {:>10} {:>10}",
                "k", "R_{k-1}", "O+ only", "O- only", "R_k", "Z_k"
            );
            for l in &cc.levels {
                let _ = writeln!(
                    s,
                    "{:>3} {:>10.6} {:>10.6} {:>10.6} {:>10.6} {:>10.6}",
                    l.k,
                    l.parent as f64 / n,
                    l.plus_only as f64 / n,
                    l.minus_only as f64 / n,
                    l.both as f64 / n,
                    l.neither as f64 / n
                );
            }
            let _ = writeln!(s, "table violations: {}", cc.table_violations);
        }
        let _ = writeln!(
            s,
            "{} at tolerance {}",
            if self.pass() { "PASS" } else { "FAIL" },
            r.tolerance
        );
        s
    }
}

pub fn density(
    q: &RationalTrace,
    limit: u64,
    tolerance: f64,
    cells: Option<u32>,
    opts: &CensusOptions,
) -> Result<(DensityPayload, CacheStatus)> {
    let (report, status) = compare_with(q, limit, tolerance, opts)?;
    let cells = cells.map(|k| cell_census(q, limit, k)).transpose()?;
    Ok((DensityPayload { report, cells }, status))
}

// ---- verify ----

fn render_suite(rep: &SuiteReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "suite {} (limit {})", rep.suite, rep.limit);
    for c in &rep.checks {
        let _ = writeln!(
            s,
            "  {:<56} {:>9} {:>6}",
            c.name,
            c.instances,
            if c.holds() { "ok" } else { "FAIL" }
        );
        if let Some(v) = &c.first_violation {
            let _ = writeln!(s, "      first violation: {v}");
        }
    }
    for n in &rep.notes {
        let _ = writeln!(s, "  note: {n}");
    }
    let _ = writeln!(
        s,
        "{} instances, {} violations",
        rep.instances(),
        rep.violations()
    );
    s
}

// ---- trace ----

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TracePayload {
    pub q: RationalTrace,
    pub classification: TraceClassification,
    /// `None` for trivial traces.
    pub profile: Option<DensityProfile>,
    pub relations: Vec<PartitionRelation>,
}

pub fn trace(q: &RationalTrace) -> Result<TracePayload> {
    let classification = classify_trace(q);
    if is_trivial(q) {
        return Ok(TracePayload {
            q: q.clone(),
            classification,
            profile: None,
            relations: Vec::new(),
        });
    }
    Ok(TracePayload {
        q: q.clone(),
        classification,
        profile: Some(theoretical_densities(q)?),
        relations: relate_partitions(q).relations,
    })
}

impl TracePayload {
    pub fn render(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "q = {}", self.q);
        let _ = writeln!(s, "classification {}", self.classification);
        match &self.profile {
            Some(p) => {
                let _ = writeln!(s, "profile {p}");
                let _ = writeln!(s, "density of Pi_* {}", p.star());
            }
            None => {
                let _ = writeln!(s, "no density profile: the partition is periodic");
            }
        }
        for r in &self.relations {
            let _ = writeln!(s, "  {r}");
        }
        s
    }
}

// ---- lucas ----

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RouteRow {
    pub p: u64,
    /// `None` for excluded primes.
    pub via_trace: Option<PartitionClass>,
    pub via_sequences: Option<PartitionClass>,
    pub agree: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LucasPayload {
    pub params: LucasParams,
    pub classification: ParamsClassification,
    pub simple_value: SimpleValue,
    pub twin: LucasParams,
    pub routes: Vec<RouteRow>,
}

pub fn lucas(params: &LucasParams, primes: &[u64]) -> Result<LucasPayload> {
    let mut routes = Vec::with_capacity(primes.len());
    for &p in primes {
        match divisor_routes(params, p) {
            Ok(r) => routes.push(RouteRow {
                p,
                via_trace: Some(r.via_trace),
                via_sequences: Some(r.via_sequences),
                agree: r.agree(),
            }),
            Err(Error::ExcludedPrime { .. }) => routes.push(RouteRow {
                p,
                via_trace: None,
                via_sequences: None,
                agree: true,
            }),
            Err(e) => return Err(e),
        }
    }
    Ok(LucasPayload {
        params: params.clone(),
        classification: classify_params(params),
        simple_value: simple_value(params)?,
        twin: twin_params(params),
        routes,
    })
}

impl LucasPayload {
    pub fn render(&self) -> String {
        let c = &self.classification;
        let mut s = String::new();
        let _ = writeln!(s, "(T, Q) = {}  q = {}  {}", self.params, c.trace, c.classification);
        let _ = writeln!(s, "simple value {}  twin {}", self.simple_value, self.twin);
        for f in &c.flags {
            let _ = writeln!(
                s,
                "  {:<5} = {:<12} {}",
                f.name,
                f.value.to_string(),
                if f.is_square { "square" } else { "-" }
            );
        }
        let _ = writeln!(s, "{:>10}  {:<20} {:<20}", "p", "via trace", "via sequences");
        for r in &self.routes {
            let show = |c: Option<PartitionClass>| c.map_or("excluded".to_string(), |c| c.to_string());
            let _ = writeln!(
                s,
                "{:>10}  {:<20} {:<20}{}",
                r.p,
                show(r.via_trace),
                show(r.via_sequences),
                if r.agree { "" } else { "  DISAGREE" }
            );
        }
        s
    }
}

// ---- orbit ----

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitPayload {
    pub orbit: Orbit,
    pub report: OrbitDivisorReport,
}

impl OrbitPayload {
    pub fn render(&self) -> String {
        let mut s = String::new();
        let o = &self.orbit;
        let _ = writeln!(
            s,
            "{} orbit from {}{}",
            o.kind,
            o.start,
            if o.periodic { " (periodic)" } else { "" }
        );
        for pt in &o.points {
            let w = pt.w.as_ref().map_or(String::new(), |w| format!("  w = {w}"));
            let _ = writeln!(s, "  n = {:>2}  q = {}{w}", pt.step, pt.q);
        }
        let r = &self.report;
        let _ = writeln!(s, "numerator factors up to {}:", r.factor_bound);
        for f in &r.steps {
            let fac: Vec<String> = f
                .factors
                .iter()
                .map(|&(p, e)| if e == 1 { p.to_string() } else { format!("{p}^{e}") })
                .collect();
            let rest = if f.is_complete() {
                String::new()
            } else {
                format!(" * [{}]", f.cofactor)
            };
            let _ = writeln!(
                s,
                "  a_{:<2} = {}{rest}   expect {}",
                f.step,
                if fac.is_empty() { "1".to_string() } else { fac.join(" * ") },
                f.expected_class
            );
        }
        if let Some(split) = &r.split {
            let _ = writeln!(s, "divisors in Pi2: {}, in Pi_* minus Pi2: {}", split.pi2, split.higher);
        }
        let _ = writeln!(
            s,
            "{} distinct odd primes found (pi({}) = {}); {} gcd pairs checked",
            r.distinct_primes, r.factor_bound, r.primes_below_bound, r.gcd_pairs_checked
        );
        for v in &r.violations {
            let _ = writeln!(s, "  VIOLATION {v:?}");
        }
        let _ = writeln!(s, "{} violations", r.violations.len());
        s
    }
}
