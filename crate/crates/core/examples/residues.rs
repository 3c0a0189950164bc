//! Exact rationals reduced mod p, Legendre symbols and square roots.
//!
//! ```text
//! cargo run --example residues -- 6/5 101
//! ```

use chebpart::arith::{legendre_rational, rational_mod, sqrt_mod, RationalTrace};
use chebpart::sl2::delta;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let q: RationalTrace = args.next().as_deref().unwrap_or("6/5").parse()?;
    let p: u64 = args.next().as_deref().unwrap_or("101").parse()?;

    let qm = rational_mod(&q, p)?;
    println!("q = {q} is {} mod {p}", qm.value());
    let two = RationalTrace::from_int(2);
    for (name, x) in [("q+2", &q + &two), ("q-2", &q - &two), ("q^2-4", delta(&q))] {
        let sym = legendre_rational(&x, p)?;
        let root = rational_mod(&x, p).ok().and_then(sqrt_mod);
        match root {
            Some(r) if sym == 1 => println!("({name}|{p}) = 1, sqrt = {}", r.value()),
            _ => println!("({name}|{p}) = {sym}"),
        }
    }
    Ok(())
}
