//! Census of one trace against its exact densities.
//!
//! ```text
//! cargo run --release --example density_census -- -5/2 1000000
//! ```

use chebpart::arith::RationalTrace;
use chebpart::density::{compare, DEFAULT_TOLERANCE};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let q: RationalTrace = args.next().as_deref().unwrap_or("1/2").parse()?;
    let limit: u64 = args.next().as_deref().unwrap_or("200000").parse()?;

    let start = std::time::Instant::now();
    let report = compare(&q, limit, DEFAULT_TOLERANCE)?;
    println!(
        "q = {q}, {} classified primes up to {limit} ({} ms)",
        report.census.classified(),
        start.elapsed().as_millis()
    );
    println!("profile {}", report.profile);
    println!("{:<8} {:>8} {:>10} {:>10} {:>9}", "class", "count", "observed", "exact", "dev");
    for c in &report.classes {
        println!(
            "{:<8} {:>8} {:>10.5} {:>10.5} {:>9.5}{}",
            c.class.to_string(),
            c.count,
            c.empirical_f64,
            c.theoretical_f64,
            c.deviation_f64,
            if c.within_tolerance { "" } else { "  !" }
        );
    }
    for d in report.dyadic.iter().take(5) {
        if let Some(r) = d.ratio {
            println!("|Pi({})| / |Pi({})| = {r:.4}", d.s + 1, d.s);
        }
    }
    Ok(())
}
