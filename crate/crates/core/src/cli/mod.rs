//! The `chebpart` command line: argument parsing, the output envelope and
//! exit codes. Handlers live in [`commands`].
//!
//! Exit codes: `0` success, `1` a density check failed, `2` usage or parse
//! error (including trivial traces), `3` a resource bound was hit, `4` a
//! mathematical invariant was violated.

pub mod commands;

use std::ffi::OsString;
use std::io::Write;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::error::Error;

pub use commands::{
    ClassifyPayload, ClassifyRow, DensityPayload, LucasPayload, OrbitPayload, RouteRow,
    TracePayload,
};

/// Bumped whenever a field of the envelope or a payload changes meaning.
pub const SCHEMA_VERSION: u32 = 1;

pub const EXIT_OK: i32 = 0;
pub const EXIT_DENSITY_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;
pub const EXIT_INVARIANT: i32 = 4;

#[derive(Parser, Debug)]
#[command(
    name = "chebpart",
    version,
    about = "Partitions of odd primes by Chebyshev polynomials at rational traces"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalArgs {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    /// Worker threads for parallel work; defaults to available parallelism.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Neither read nor write the census cache.
    #[arg(long, global = true)]
    pub no_cache: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Class, appearance index and cell path of primes.
    Classify {
        #[arg(long, allow_hyphen_values = true)]
        q: String,
        #[command(flatten)]
        primes: PrimeSelection,
    },
    /// Empirical class densities against the exact profile.
    Density {
        #[arg(long, allow_hyphen_values = true)]
        q: String,
        #[arg(long, default_value_t = 1_000_000)]
        limit: u64,
        /// Absolute tolerance per class.
        #[arg(long, default_value_t = crate::density::DEFAULT_TOLERANCE)]
        tolerance: f64,
        /// Also tally the cell tables down to this depth.
        #[arg(long)]
        cells: Option<u32>,
    },
    /// Run a verification suite.
    Verify {
        #[arg(long, value_enum)]
        suite: SuiteArg,
        /// Prime limit, or the factor bound for `dynamics`.
        #[arg(long)]
        limit: Option<u64>,
    },
    /// Genericity tag, density profile and partition relations of a trace.
    Trace {
        #[arg(long, allow_hyphen_values = true)]
        q: String,
    },
    /// Dickson sequences of `(T, Q)` and their divisors.
    Lucas {
        #[arg(long, allow_hyphen_values = true)]
        t: i64,
        /// The determinant `Q`.
        #[arg(long, allow_hyphen_values = true)]
        det: i64,
        #[command(flatten)]
        primes: PrimeSelection,
    },
    /// Rotation or Chebyshev-map orbit with a divisor report.
    Orbit {
        #[arg(long, value_enum)]
        map: MapArg,
        /// Degree `m` of `ψ_m = C_m`; ignored for rotations.
        #[arg(long, default_value_t = 2)]
        degree: u32,
        #[arg(long, allow_hyphen_values = true)]
        q0: String,
        /// Imaginary part of the rotation generator.
        #[arg(long, allow_hyphen_values = true)]
        w1: Option<String>,
        #[arg(long, default_value_t = 6)]
        steps: usize,
        #[arg(long, default_value_t = 1_000_000)]
        factor_bound: u64,
        /// Raise the step cap of Chebyshev-map orbits.
        #[arg(long, default_value_t = crate::dynamics::DEFAULT_STEP_CAP)]
        max_steps: usize,
    },
}

#[derive(Args, Debug, Clone, Copy)]
#[group(required = true, multiple = false)]
pub struct PrimeSelection {
    /// A single odd prime.
    #[arg(long)]
    pub prime: Option<u64>,
    /// Every odd prime up to this bound.
    #[arg(long)]
    pub limit: Option<u64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SuiteArg {
    Identities,
    Congruences,
    Tables,
    Lucas,
    Splitting,
    Dynamics,
}

impl From<SuiteArg> for crate::verify::Suite {
    fn from(s: SuiteArg) -> Self {
        use crate::verify::Suite;
        match s {
            SuiteArg::Identities => Suite::Identities,
            SuiteArg::Congruences => Suite::Congruences,
            SuiteArg::Tables => Suite::Tables,
            SuiteArg::Lucas => Suite::Lucas,
            SuiteArg::Splitting => Suite::Splitting,
            SuiteArg::Dynamics => Suite::Dynamics,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MapArg {
    Rotation,
    Cheb,
}

/// One JSON object per invocation.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Envelope<T> {
    pub schema_version: u32,
    pub command: String,
    pub parameters: serde_json::Value,
    pub result: Option<T>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub elapsed_ms: u64,
    /// `None` when no cache was consulted.
    pub cache_hit: Option<bool>,
}

/// A rendered command result.
pub struct Outcome {
    pub result: serde_json::Value,
    pub text: String,
    pub exit: i32,
    pub cache_hit: Option<bool>,
}

/// The exit code an error maps to.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::FactoringBoundExceeded { .. }
        | Error::ReductionDepth(..)
        | Error::Unresolved { .. }
        | Error::Io(_) => EXIT_RESOURCE,
        Error::IdentityViolation { .. }
        | Error::PartitionViolation { .. }
        | Error::InvariantViolation(_) => EXIT_INVARIANT,
        _ => EXIT_USAGE,
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Classify { .. } => "classify",
        Command::Density { .. } => "density",
        Command::Verify { .. } => "verify",
        Command::Trace { .. } => "trace",
        Command::Lucas { .. } => "lucas",
        Command::Orbit { .. } => "orbit",
    }
}

/// Parses `argv` and runs the command, writing to `out` and `err`; returns
/// the exit code.
pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{rendered}");
            return code;
        }
    };
    if let Some(n) = cli.global.threads {
        // Fails only when the global pool already exists.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
    let name = command_name(&cli.command);
    let parameters = commands::parameters(&cli.command);
    let start = Instant::now();
    let outcome = commands::dispatch(&cli.command, &cli.global);
    let elapsed_ms = start.elapsed().as_millis() as u64;
    let json = cli.global.format == Format::Json;
    match outcome {
        Ok(o) => {
            if json {
                let env = Envelope {
                    schema_version: SCHEMA_VERSION,
                    command: name.to_string(),
                    parameters,
                    result: Some(o.result),
                    error: None,
                    elapsed_ms,
                    cache_hit: o.cache_hit,
                };
                let _ = writeln!(out, "{}", serde_json::to_string(&env).expect("serializable"));
            } else {
                let _ = write!(out, "{}", o.text);
            }
            o.exit
        }
        Err(e) => {
            if json {
                let env: Envelope<serde_json::Value> = Envelope {
                    schema_version: SCHEMA_VERSION,
                    command: name.to_string(),
                    parameters,
                    result: None,
                    error: Some(e.to_string()),
                    elapsed_ms,
                    cache_hit: None,
                };
                let _ = writeln!(out, "{}", serde_json::to_string(&env).expect("serializable"));
            }
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

/// Entry point for the binary.
pub fn main() -> ! {
    let code = run_with(
        std::env::args_os(),
        &mut std::io::stdout().lock(),
        &mut std::io::stderr().lock(),
    );
    std::process::exit(code)
}
