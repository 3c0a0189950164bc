//! Genericity tags and exact density profiles for a list of traces, with
//! the partition relations of the first one.
//!
//! ```text
//! cargo run --example trace_profile -- 8/5 -5/2 -2/3 6/5 1/2
//! ```

use chebpart::arith::RationalTrace;
use chebpart::traceclass::{classify_trace, relate_partitions, theoretical_densities};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut traces: Vec<String> = std::env::args().skip(1).collect();
    if traces.is_empty() {
        traces = ["8/5", "-5/2", "-2/3", "6/5", "1/2", "3"].map(String::from).to_vec();
    }
    for s in &traces {
        let q: RationalTrace = s.parse()?;
        let tag = classify_trace(&q);
        match theoretical_densities(&q) {
            Ok(p) => println!("{q:>8}  {tag}\n          profile {p}, Pi_* {}", p.star()),
            Err(e) => println!("{q:>8}  {tag} ({e})"),
        }
    }
    let q: RationalTrace = traces[0].parse()?;
    println!("relations of {q}:");
    for line in relate_partitions(&q).lines() {
        println!("  {line}");
    }
    Ok(())
}
