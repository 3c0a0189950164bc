//! Runs every verification suite at its default limit.
//!
//! ```text
//! cargo run --release --example verify_suites [suite]
//! ```

use chebpart::verify::{run_suite, Suite};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let only: Option<Suite> = std::env::args().nth(1).map(|s| s.parse()).transpose()?;
    let mut ok = true;
    for suite in Suite::ALL.into_iter().filter(|s| only.is_none_or(|o| o == *s)) {
        let start = std::time::Instant::now();
        let rep = run_suite(suite, None)?;
        println!("== {suite} (limit {}, {} ms)", rep.limit, start.elapsed().as_millis());
        for c in &rep.checks {
            let mark = if c.holds() { "ok" } else { "VIOLATED" };
            println!("  {:<56} {:>9} {mark}", c.name, c.instances);
            if let Some(v) = &c.first_violation {
                println!("      first: {v}");
            }
        }
        for n in &rep.notes {
            println!("  note: {n}");
        }
        ok &= rep.holds();
    }
    if !ok {
        std::process::exit(4);
    }
    Ok(())
}
