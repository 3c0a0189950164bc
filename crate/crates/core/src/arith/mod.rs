//! Exact rational arithmetic, prime generation and residues mod `p`.

mod modp;
mod rational;
mod sieve;

pub use modp::{
    jacobi, legendre_rational, rational_mod, sqrt_mod, two_adic_valuation,
    two_adic_valuation_big, FpElement,
};
pub use rational::{big_gcd, is_square_int, is_square_rational, RationalTrace};
pub use sieve::{
    factorize, is_odd_prime, is_prime, primes_up_to, Factorization, PartialFactorization, Sieve,
};
