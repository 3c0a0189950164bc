//! Fractions of admissible primes in the cells `Ω_k^± ∩ R_{k-1}`, `R_k`
//! and `Z_k`, with the cell-exit table check.
//!
//! ```text
//! cargo run --release --example cell_census -- 1/2 1000000 3
//! ```

use chebpart::arith::RationalTrace;
use chebpart::density::cell_census;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let q: RationalTrace = args.next().as_deref().unwrap_or("1/2").parse()?;
    let limit: u64 = args.next().as_deref().unwrap_or("200000").parse()?;
    let depth: u32 = args.next().as_deref().unwrap_or("3").parse()?;

    let cc = cell_census(&q, limit, depth)?;
    let n = cc.admissible as f64;
    println!("q = {q}: {} admissible primes up to {limit}", cc.admissible);
    println!("{:>3} {:>9} {:>9} {:>9} {:>9}", "k", "O+ only", "O- only", "R_k", "Z_k");
    for l in &cc.levels {
        println!(
            "{:>3} {:>9.5} {:>9.5} {:>9.5} {:>9.5}{}",
            l.k,
            l.plus_only as f64 / n,
            l.minus_only as f64 / n,
            l.both as f64 / n,
            l.neither as f64 / n,
            if l.omega_sets_coincide() { "  (Omega sets coincide)" } else { "" }
        );
    }
    for (s, c) in cc.rz1_gamma.iter().enumerate() {
        println!("(R_1 | Z_1) & Gamma_{s}: {:.5}", *c as f64 / n);
    }
    println!("table violations: {}", cc.table_violations);
    Ok(())
}
