//! The Euler criterion in SL(2, F_p), the congruences of `C_p, U_p, V_p,
//! W_p`, and the index of appearance.
//!
//! ```text
//! cargo run --example euler_criterion -- 3 60
//! ```

use chebpart::arith::{primes_up_to, RationalTrace};
use chebpart::sl2::{appearance_index, congruence_suite, euler_criterion};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let q: RationalTrace = args.next().as_deref().unwrap_or("3").parse()?;
    let limit: u64 = args.next().as_deref().unwrap_or("60").parse()?;

    println!("{:>6} {:>4} {:>9} {:>8} {:>6} {:>5}  congruences", "p", "d|p", "exponent", "A^e", "xi", "sign");
    for p in primes_up_to(limit).into_iter().skip(1) {
        let Ok(e) = euler_criterion(&q, p) else {
            println!("{p:>6}  divides the denominator");
            continue;
        };
        let ai = appearance_index(&q, p)?;
        let cong = congruence_suite(&q, p)?;
        println!(
            "{p:>6} {:>4} {:>9} {:>8} {:>6} {:>5}  {}",
            e.delta_symbol,
            e.exponent,
            e.scalar.map_or("-".into(), |s| s.centered().to_string()),
            ai.xi,
            ai.sign_at_xi,
            if cong.all_hold() { "hold" } else { "FAIL" }
        );
    }
    Ok(())
}
