pub mod arith;
pub mod cheb;
pub mod cli;
pub mod density;
pub mod dynamics;
pub mod error;
pub mod lucas;
pub mod partition;
pub mod sl2;
pub mod traceclass;
pub mod verify;

pub use error::{Error, Result};
