use thiserror::Error;

/// Errors raised by the library.
///
/// Mathematical-invariant violations (`IdentityViolation`, `PartitionViolation`,
/// `InvariantViolation`) indicate a bug in this crate; they are never expected
/// for valid input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid rational `{0}`")]
    ParseRational(String),

    #[error("zero denominator")]
    ZeroDenominator,

    #[error("{p} divides the denominator of {q}")]
    DenominatorDivisible { q: String, p: u64 },

    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),

    #[error("invalid index {n} for {kind}")]
    InvalidIndex { kind: &'static str, n: u64 },

    #[error("polynomial vanishes identically mod {0}")]
    ZeroPolynomialModP(u64),

    #[error("{p} divides the numerator or denominator of delta for q = {q}")]
    ExcludedPrime { q: String, p: u64 },

    #[error("(delta|{p}) = 0 for q = {q}; p-hat is undefined")]
    DeltaDivisor { q: String, p: u64 },

    #[error("{p} is not in R_{parent} for q = {q}")]
    NotInParentCell { q: String, p: u64, parent: u32 },

    #[error("no vanishing index found up to {n_max} for p = {p}")]
    Unresolved { p: u64, n_max: u64 },

    #[error("partition violation at p = {p}: {detail}")]
    PartitionViolation { p: u64, detail: String },

    #[error("identity {identity} fails at {instance}")]
    IdentityViolation { identity: String, instance: String },

    #[error("invariant violated: {0}")]
    InvariantViolation(String),

    #[error("factoring bound {bound} exceeded (cofactor {cofactor})")]
    FactoringBoundExceeded { bound: u64, cofactor: String },

    #[error("trace {0} is trivial (one of 0, ±1, ±2)")]
    TrivialTrace(String),

    #[error("starting point {0} is periodic or pre-periodic")]
    TrivialStartingPoint(String),

    #[error("trace {0} is not circular")]
    NotCircular(String),

    #[error("point ({q}, {w}) is not on the circle of radius 2")]
    NotOnCircle { q: String, w: String },

    #[error("reduction chain for {0} exceeded depth {1}")]
    ReductionDepth(String, usize),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("i/o: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
