//! The partition of odd primes by a rational trace, and the cell tables that
//! refine it.

mod cells;
mod classify;

pub use cells::{
    c_pow2_splits, cell_assignment, check_admissible, gamma_level, is_primitive, omega_member,
    p_hat, r_depth, splitting_checks, verify_tables, Cell, CellAssignment, ClauseCheck, Sign,
    SplittingCheck, TableReport,
};
pub use classify::{
    classify_prime, classify_prime_bruteforce, classify_prime_detailed, PartitionClass,
    PrimeClassification,
};
