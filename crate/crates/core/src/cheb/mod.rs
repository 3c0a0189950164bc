//! Chebyshev polynomials of the four kinds, chebotomic factors and the
//! identities relating them.

mod chebotomic;
mod family;
pub mod identities;
mod poly;

pub use chebotomic::{chebotomic, cyclotomic, euler_phi};
pub(crate) use family::Mat2;
pub use family::{c, cheb_coeffs, cheb_eval, cheb_eval_mod, u, v, w, ChebKind};
pub use identities::{verify_identity, IdentityId, IdentityRanges, IdentityReport};
pub use poly::{count_roots_exhaustive, splits_completely, IntPolynomial};
