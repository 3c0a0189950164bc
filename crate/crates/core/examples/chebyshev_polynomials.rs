//! Coefficients of the four Chebyshev families, exact values at a rational
//! point, and the chebotomic factorization of `U_n = V_n W_n`.
//!
//! ```text
//! cargo run --example chebyshev_polynomials -- 9 1/3
//! ```

use chebpart::arith::RationalTrace;
use chebpart::cheb::{cheb_coeffs, cheb_eval, chebotomic, ChebKind};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let n: u64 = args.next().as_deref().unwrap_or("9").parse()?;
    let q: RationalTrace = args.next().as_deref().unwrap_or("1/3").parse()?;

    for kind in [ChebKind::FirstC, ChebKind::SecondU, ChebKind::ThirdV, ChebKind::FourthW] {
        let Ok(poly) = cheb_coeffs(kind, n) else {
            println!("{}_{n}: odd index only", kind.symbol());
            continue;
        };
        println!("{}_{n}(x) = {poly}", kind.symbol());
        println!("{}_{n}({q}) = {}", kind.symbol(), cheb_eval(kind, n, &q)?);
    }
    if n % 2 == 1 {
        // W_n is the product of Ψ_d over 1 < d | n, V_n of Ψ_{2d}.
        for d in (2..=n).filter(|d| n.is_multiple_of(*d)) {
            println!("Psi_{d}(x) = {}", chebotomic(d)?);
            println!("Psi_{}(x) = {}", 2 * d, chebotomic(2 * d)?);
        }
    }
    Ok(())
}
