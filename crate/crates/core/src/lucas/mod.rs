//! Dickson polynomials of integer pairs `(T, Q)`, similarity classes and
//! their simple values, twins, and the identification of the divisor sets
//! of `L_n`, `K_n` with the partition of `q = T^2/Q - 2`.

mod divisors;
pub mod identities;
mod params;

pub use divisors::{divisor_class, divisor_class_direct, divisor_routes, DivisorRoutes};
pub use identities::{
    default_params, lucas_identity_suite, verify_lucas_identity, LucasIdentity,
    LucasIdentityCheck,
};
pub use params::{
    classify_params, dickson, dickson_matrix, dickson_mod, param_roots, psi, similar,
    simple_value, simple_values, trace_of, twin_params, DicksonKind, LucasParams,
    ParamsClassification, SimpleValue, SquareFlag, SQUAREFREE_BOUND,
};
