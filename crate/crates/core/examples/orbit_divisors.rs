//! Quadratic-map and rotation orbits over the rationals with the prime
//! divisors of their numerators.
//!
//! ```text
//! cargo run --release --example orbit_divisors -- 1/3 8
//! ```

use chebpart::arith::RationalTrace;
use chebpart::dynamics::{chebyshev_map_orbit, orbit_divisor_report, rotation_orbit};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let q0: RationalTrace = args.next().as_deref().unwrap_or("1/3").parse()?;
    let steps: usize = args.next().as_deref().unwrap_or("8").parse()?;

    let orbit = chebyshev_map_orbit(2, &q0, steps)?;
    let rep = orbit_divisor_report(&orbit, 1_000_000);
    for f in &rep.steps {
        let bits = f.numerator.bits();
        let small: Vec<String> = f.factors.iter().map(|(p, e)| format!("{p}^{e}")).collect();
        println!(
            "a_{:<2} ({bits:>5} bits): {}{}",
            f.step,
            small.join(" "),
            if f.is_complete() { "" } else { " * cofactor" }
        );
    }
    println!("violations: {}", rep.violations.len());

    let w1: RationalTrace = "8/5".parse()?;
    let rot = rotation_orbit(&"6/5".parse()?, Some(&w1), 12)?;
    let rep = orbit_divisor_report(&rot, 100_000);
    let split = rep.split.unwrap_or_default();
    println!(
        "rotation by 6/5 + 8/5 i: {} primes in Pi2, {} higher, violations {}",
        split.pi2,
        split.higher,
        rep.violations.len()
    );
    Ok(())
}
