//! Dickson sequences of `(T, Q)`: trace, simple value, twin, square flags,
//! and the class of each prime read both from the trace and from the
//! sequences themselves.
//!
//! ```text
//! cargo run --example lucas_bridge -- 1 -2 60
//! ```

use chebpart::arith::primes_up_to;
use chebpart::lucas::{
    classify_params, dickson, divisor_routes, simple_value, twin_params, DicksonKind, LucasParams,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let t: i64 = args.next().as_deref().unwrap_or("1").parse()?;
    let det: i64 = args.next().as_deref().unwrap_or("-2").parse()?;
    let limit: u64 = args.next().as_deref().unwrap_or("60").parse()?;

    let x = LucasParams::new(t, det)?;
    let cls = classify_params(&x);
    println!("{x}: q = {}, {}", cls.trace, cls.classification);
    println!("simple value {}, twin {}", simple_value(&x)?, twin_params(&x));
    println!("violated square conditions: {:?}", cls.violated());
    let l: Vec<String> = (0..10).map(|n| dickson(DicksonKind::L, n, &x).to_string()).collect();
    let k: Vec<String> = (0..10).map(|n| dickson(DicksonKind::K, n, &x).to_string()).collect();
    println!("L: {}", l.join(", "));
    println!("K: {}", k.join(", "));
    for p in primes_up_to(limit).into_iter().skip(1) {
        match divisor_routes(&x, p) {
            Ok(r) => println!(
                "{p:>5}  {:<8} {:<8} {}",
                r.via_trace.to_string(),
                r.via_sequences.to_string(),
                if r.agree() { "" } else { "DISAGREE" }
            ),
            Err(e) => println!("{p:>5}  {e}"),
        }
    }
    Ok(())
}
