//! End-to-end acceptance run: one PASS/FAIL line per criterion, then a
//! nonzero exit if any failed.

mod common;

use std::time::{Duration, Instant};

use chebpart::arith::{primes_up_to, RationalTrace};
use chebpart::cheb::identities::verify_all_identities;
use chebpart::cheb::{cheb_coeffs, ChebKind, IdentityRanges};
use chebpart::density::{cell_census, compare_with, CensusOptions, DEFAULT_TOLERANCE};
use chebpart::dynamics::{chebyshev_map_orbit, orbit_divisor_report, OrbitViolation};
use chebpart::lucas::{default_params, lucas_identity_suite, LucasParams};
use chebpart::partition::{classify_prime, classify_prime_bruteforce, PartitionClass};
use chebpart::traceclass::{relate_partitions, theoretical_densities};
use chebpart::verify::{run_suite, Suite, SuiteReport, ORBIT_STARTS};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{class_by_definition, parse_poly, rat, GOLDEN_C, GOLDEN_U};

const PANEL: [&str; 10] = ["0", "1/2", "-1/2", "3", "-3", "6/5", "8/5", "-5/2", "-2/3", "7"];
const DENSITY_LIMIT: u64 = 1_000_000;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn panel() -> Vec<RationalTrace> {
    PANEL.iter().map(|s| rat(s)).collect()
}

fn odd_primes_below(n: u64) -> Vec<u64> {
    primes_up_to(n - 1).into_iter().skip(1).collect()
}

/// Named checks of a suite report that must all be present and clean.
fn suite_checks(rep: &SuiteReport, names: &[&str]) -> (bool, Vec<String>) {
    let mut ok = true;
    let mut lines = Vec::new();
    for name in names {
        match rep.check(name) {
            Some(c) => {
                ok &= c.holds() && c.instances > 0;
                lines.push(format!("{name}: {}/{}", c.violations, c.instances));
                if let Some(v) = &c.first_violation {
                    lines.push(format!("  first violation: {v}"));
                }
            }
            None => {
                ok = false;
                lines.push(format!("{name}: missing"));
            }
        }
    }
    (ok, lines)
}

fn random_lucas_params(n: usize) -> Vec<LucasParams> {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let (t, q) = (rng.gen_range(-50i64..=50), rng.gen_range(-50i64..=50));
        if let Ok(p) = LucasParams::new(t, q) {
            out.push(p);
        }
    }
    out
}

fn identities() -> Outcome {
    let start = Instant::now();
    let cheb = verify_all_identities(&IdentityRanges::default());
    let mut params = default_params();
    params.extend(random_lucas_params(50));
    let lucas = lucas_identity_suite(&params, 15);
    let elapsed = start.elapsed();
    let cheb_ok = cheb.as_ref().is_ok_and(|r| r.iter().all(|x| x.instances > 0));
    let cheb_n: usize = cheb.as_ref().map_or(0, |r| r.iter().map(|x| x.instances).sum());
    let lucas_expected: Vec<_> = lucas.iter().filter(|c| c.identity.expected_to_hold()).collect();
    let lucas_ok = lucas.iter().all(|c| c.as_expected());
    let lucas_n: u64 = lucas_expected.iter().map(|c| c.instances).sum();
    let mut detail = format!(
        "{cheb_n} Chebyshev instances, {lucas_n} Dickson instances, {:.2}s",
        elapsed.as_secs_f64()
    );
    if let Err(e) = &cheb {
        detail.push_str(&format!("; {e}"));
    }
    for c in lucas.iter().filter(|c| !c.as_expected()) {
        detail.push_str(&format!("; {:?} {:?}", c.identity, c.first_counterexample));
    }
    outcome(cheb_ok && lucas_ok && elapsed < Duration::from_secs(10), detail)
}

fn golden() -> Outcome {
    let mut bad = Vec::new();
    let rows = GOLDEN_C
        .iter()
        .map(|&(n, s)| (ChebKind::FirstC, n, s))
        .chain(GOLDEN_U.iter().map(|&(n, s)| (ChebKind::SecondU, n, s)));
    let mut count = 0;
    for (kind, n, s) in rows {
        count += 1;
        let got: Vec<i64> = cheb_coeffs(kind, n)
            .expect("index")
            .coeffs()
            .iter()
            .map(|c| i64::try_from(c).expect("small"))
            .collect();
        if got != parse_poly(s) {
            bad.push(format!("{}_{n}", kind.symbol()));
        }
    }
    outcome(bad.is_empty(), format!("{count} rows, mismatches {bad:?}"))
}

fn oracle_equivalence() -> Outcome {
    let start = Instant::now();
    let primes = odd_primes_below(2000);
    let mut checked = 0u64;
    let mut bad = Vec::new();
    for q in panel() {
        for &p in &primes {
            let fast = classify_prime(&q, p);
            if fast == PartitionClass::DenominatorDivisor {
                continue;
            }
            checked += 1;
            let brute = classify_prime_bruteforce(&q, p, p + 1);
            let def = class_by_definition(&q, p);
            if brute.as_ref() != Ok(&fast) || def != fast {
                bad.push(format!("q = {q}, p = {p}: {fast} / {brute:?} / {def}"));
            }
        }
    }
    let elapsed = start.elapsed();
    outcome(
        bad.is_empty() && elapsed < Duration::from_secs(60),
        format!(
            "{checked} (q, p) pairs, {} disagreements, {:.2}s{}",
            bad.len(),
            elapsed.as_secs_f64(),
            bad.first().map_or(String::new(), |b| format!("; {b}"))
        ),
    )
}

fn euler_and_congruences() -> Outcome {
    match run_suite(Suite::Congruences, Some(10_000)) {
        Ok(rep) => {
            let (ok, lines) =
                suite_checks(&rep, &["Euler criterion in SL(2)", "C_p, V_p, W_p, U_p congruences"]);
            outcome(ok, lines.join("; "))
        }
        Err(e) => outcome(false, e.to_string()),
    }
}

fn structural() -> Outcome {
    let mut ok = true;
    let mut lines = Vec::new();
    let mut take = |rep: chebpart::Result<SuiteReport>, names: &[&str]| match rep {
        Ok(r) => {
            let (o, l) = suite_checks(&r, names);
            ok &= o;
            lines.extend(l);
        }
        Err(e) => {
            ok = false;
            lines.push(e.to_string());
        }
    };
    take(
        run_suite(Suite::Tables, Some(10_000)),
        &[
            "exactly one class, matching the definitional scan",
            "cell tables and boundary clauses",
            "partition relations",
        ],
    );
    take(
        run_suite(Suite::Congruences, Some(10_000)),
        &[
            "appearance index equals linear scan",
            "p = (delta|p) mod xi",
            "2 xi divides p - (delta|p)",
            "(q+2|p) = -1 forces an odd cofactor",
            "odd cofactor off Pi0 forces (q+2|p) = -1",
            "p - (delta|p) = 2r forces xi = r",
            "xi = p when (delta|p) = 0",
            "p - (delta|p) = 2 mod 4 forces odd xi",
        ],
    );
    match run_suite(Suite::Splitting, Some(10_000)) {
        Ok(r) => {
            let c = r.check("Gamma_s by splitting of C_{2^s}");
            ok &= c.is_some_and(|c| c.holds());
            let by_split: Vec<_> = r.checks.iter().filter(|c| c.name.ends_with("by splitting")).collect();
            let n: u64 = by_split.iter().map(|c| c.instances).sum();
            let v: u64 = by_split.iter().map(|c| c.violations).sum();
            ok &= n > 0 && v == 0 && r.holds();
            lines.push(format!(
                "Gamma_s by splitting: {}/{}",
                c.map_or(0, |c| c.violations),
                c.map_or(0, |c| c.instances)
            ));
            lines.push(format!("splitting predicates (k <= 2): {v}/{n}"));
        }
        Err(e) => {
            ok = false;
            lines.push(e.to_string());
        }
    }
    // Exactly-one-class for every panel prime below 10^4, and the associate
    // union for 6/5 and 8/5 by name.
    let primes = odd_primes_below(10_000);
    let assoc = relate_partitions(&rat("6/5"));
    let has_assoc = assoc
        .lines()
        .iter()
        .any(|l| l == "Π_2(8/5) = Π_0(6/5) ∪ Π_1(6/5)");
    let mut assoc_bad = 0;
    for rel in &assoc.relations {
        for &p in &primes {
            if rel.holds_at(p).ok().flatten() == Some(false) {
                assoc_bad += 1;
            }
        }
    }
    ok &= has_assoc && assoc_bad == 0;
    lines.push(format!("associate union for 6/5 present: {has_assoc}, violations {assoc_bad}"));
    outcome(ok, lines.join("; "))
}

fn densities() -> (Outcome, Vec<String>) {
    let cases = [
        ("1/2", "Generic", vec![("1/3", 0u32), ("1/3", 1)]),
        ("-5/2", "CaseA", vec![("7/24", 0), ("7/24", 1), ("1/3", 2)]),
        ("-2/3", "CaseB", vec![("7/24", 0), ("7/24", 1), ("1/12", 2)]),
        ("6/5", "CaseC", vec![("1/6", 0), ("1/6", 1)]),
    ];
    let mut ok = true;
    let mut lines = Vec::new();
    let opts = CensusOptions::default();
    for (q, tag, expect) in cases {
        let q = rat(q);
        let start = Instant::now();
        let rep = match compare_with(&q, DENSITY_LIMIT, DEFAULT_TOLERANCE, &opts) {
            Ok((r, _)) => r,
            Err(e) => {
                ok = false;
                lines.push(format!("q = {q}: {e}"));
                continue;
            }
        };
        let profile = theoretical_densities(&q).expect("nontrivial");
        let stated = expect.iter().all(|(d, s)| profile.d(*s) == rat(d));
        let ratios = rep.leading_ratios(3);
        let dyadic_ok = ratios.len() == 3
            && ratios.iter().all(|r| r.is_some_and(|x| (0.4..=0.6).contains(&x)));
        let pass = rep.pass() && stated && dyadic_ok;
        ok &= pass;
        let shown: Vec<String> = rep
            .classes
            .iter()
            .take(4)
            .map(|c| format!("{} {:.4} vs {:.4}", c.class, c.empirical_f64, c.theoretical_f64))
            .collect();
        let rs: Vec<String> = ratios.iter().map(|r| r.map_or("-".into(), |x| format!("{x:.3}"))).collect();
        lines.push(format!(
            "q = {q} ({tag}): {}; ratios [{}]; {:.1}s{}",
            shown.join(", "),
            rs.join(", "),
            start.elapsed().as_secs_f64(),
            if pass { "" } else { " <- FAIL" }
        ));
    }
    (outcome(ok, format!("limit {DENSITY_LIMIT}, tolerance {DEFAULT_TOLERANCE}")), lines)
}

fn near(x: f64, target: f64) -> bool {
    (x - target).abs() <= DEFAULT_TOLERANCE
}

fn cells() -> (Outcome, Vec<String>) {
    let mut ok = true;
    let mut lines = Vec::new();
    let run = |q: &str| cell_census(&rat(q), DENSITY_LIMIT, 2);

    match run("1/2") {
        Ok(cc) => {
            let l1 = cc.level(1).expect("depth 1");
            let l2 = cc.level(2).expect("depth 2");
            let four = [l1.plus_only, l1.minus_only, l1.both, l1.neither].map(|n| cc.fraction(n));
            let r1 = cc.fraction(l1.both);
            let r2 = cc.fraction(l2.both);
            let pass = four.iter().all(|&f| near(f, 0.25)) && near(r1, 0.25) && near(r2, 1.0 / 16.0);
            ok &= pass;
            lines.push(format!(
                "q = 1/2: k=1 cells {:.4} {:.4} {:.4} {:.4}; R_1 {r1:.4}, R_2 {r2:.4}",
                four[0], four[1], four[2], four[3]
            ));
        }
        Err(e) => {
            ok = false;
            lines.push(e.to_string());
        }
    }
    for q in ["-5/2", "-2/3"] {
        match run(q) {
            Ok(cc) => {
                let l2 = cc.level(2).expect("depth 2");
                ok &= l2.omega_sets_coincide();
                lines.push(format!(
                    "q = {q}: Omega_2^± ∩ R_1 vs R_2 exceptions {} + {}",
                    l2.plus_only, l2.minus_only
                ));
            }
            Err(e) => {
                ok = false;
                lines.push(e.to_string());
            }
        }
    }
    match run("6/5") {
        Ok(cc) => {
            let l1 = cc.level(1).expect("depth 1");
            let r1 = cc.fraction(l1.both);
            ok &= l1.omega_sets_coincide() && near(r1, 0.5);
            lines.push(format!(
                "q = 6/5: Omega_1^± vs R_1 exceptions {} + {}; R_1 {r1:.4}",
                l1.plus_only, l1.minus_only
            ));
        }
        Err(e) => {
            ok = false;
            lines.push(e.to_string());
        }
    }
    (outcome(ok, format!("limit {DENSITY_LIMIT}, tolerance {DEFAULT_TOLERANCE}")), lines)
}

fn lucas() -> Outcome {
    match run_suite(Suite::Lucas, Some(10_000)) {
        Ok(rep) => {
            let (ok, lines) = suite_checks(
                &rep,
                &[
                    "trace route agrees with sequence route",
                    "(1,-2) and (3,2) are twins",
                    "(1,-2) flags only -2DQ, (3,2) flags only 2Q",
                ],
            );
            outcome(ok && rep.holds(), lines.join("; "))
        }
        Err(e) => outcome(false, e.to_string()),
    }
}

fn dynamics() -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    for start in ORBIT_STARTS {
        let orbit = match chebyshev_map_orbit(2, &rat(start), 8) {
            Ok(o) => o,
            Err(e) => {
                ok = false;
                parts.push(format!("{start}: {e}"));
                continue;
            }
        };
        let rep = orbit_divisor_report(&orbit, 1_000_000);
        let bound = rep
            .violations
            .iter()
            .filter(|v| matches!(v, OrbitViolation::DivisorBound { .. }))
            .count();
        let gcd = rep
            .violations
            .iter()
            .filter(|v| matches!(v, OrbitViolation::CommonFactor { .. }))
            .count();
        ok &= rep.holds() && rep.gcd_pairs_checked > 0;
        parts.push(format!(
            "{start}: {} primes, {} gcd pairs, bound/gcd violations {bound}/{gcd}",
            rep.distinct_primes,
            rep.gcd_pairs_checked
        ));
    }
    match run_suite(Suite::Dynamics, None) {
        Ok(rep) => {
            ok &= rep.holds();
            parts.push(format!("dynamics suite {}/{}", rep.violations(), rep.instances()));
        }
        Err(e) => {
            ok = false;
            parts.push(e.to_string());
        }
    }
    outcome(ok, parts.join("; "))
}

fn main() {
    let start = Instant::now();
    let mut all = true;
    let mut report = |n: u32, name: &str, o: Outcome, extra: Vec<String>| {
        all &= o.pass;
        println!("{} {n} {name}: {}", if o.pass { "PASS" } else { "FAIL" }, o.detail);
        for l in extra {
            println!("       {l}");
        }
    };
    report(1, "identity suite", identities(), vec![]);
    report(2, "golden coefficient rows", golden(), vec![]);
    report(3, "oracle equivalence below 2000", oracle_equivalence(), vec![]);
    report(4, "Euler criterion and congruences below 10^4", euler_and_congruences(), vec![]);
    report(5, "structural relations below 10^4", structural(), vec![]);
    let (o, l) = densities();
    report(6, "class densities", o, l);
    let (o, l) = cells();
    report(7, "cell densities", o, l);
    report(8, "Lucas bridge below 10^4", lucas(), vec![]);
    report(9, "quadratic orbit divisors", dynamics(), vec![]);
    println!("acceptance finished in {:.1}s", start.elapsed().as_secs_f64());
    if !all {
        std::process::exit(1);
    }
}
