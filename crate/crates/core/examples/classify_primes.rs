//! Classes of the first odd primes, the appearance index behind each, and
//! agreement with the definitional scan of `W_n, V_n, C_n`.
//!
//! ```text
//! cargo run --example classify_primes -- -2/3 100
//! ```

use chebpart::arith::{primes_up_to, RationalTrace};
use chebpart::partition::{classify_prime_bruteforce, classify_prime_detailed, r_depth};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let q: RationalTrace = args.next().as_deref().unwrap_or("-2/3").parse()?;
    let limit: u64 = args.next().as_deref().unwrap_or("100").parse()?;

    println!("{:>6}  {:<20} {:>6}  {:>7}  scan", "p", "class", "xi", "R-depth");
    for p in primes_up_to(limit).into_iter().skip(1) {
        let d = classify_prime_detailed(&q, p)?;
        let scan = classify_prime_bruteforce(&q, p, p + 1);
        let depth = r_depth(&q, p, 16).map_or("-".to_string(), |k| k.to_string());
        println!(
            "{p:>6}  {:<20} {:>6}  {depth:>7}  {}",
            d.class.to_string(),
            d.appearance.map_or("-".into(), |a| a.xi.to_string()),
            match scan {
                Ok(c) if c == d.class => "agrees".to_string(),
                Ok(c) => format!("DIFFERS: {c}"),
                Err(e) => e.to_string(),
            }
        );
    }
    Ok(())
}
