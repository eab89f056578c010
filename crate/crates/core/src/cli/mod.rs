//! Command-line surface.
//!
//! Exit codes:
//!
//! | code | meaning |
//! |------|---------|
//! | 0 | success |
//! | 1 | I/O or other failure |
//! | 2 | malformed input or arguments |
//! | 3 | capacity cap exceeded |
//! | 4 | verification failure (a bound is violated, a certificate fails, or no verified solution was found) |
//!
//! Every report starts with comment lines recording the tool version, the
//! parsed configuration and the seed.

mod bench;
mod commands;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::error::Error;
use crate::macaulay::{DegreeKind, Flavor};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Hard ceiling for `--cap` (columns of any materialized matrix).
pub const HARD_MAX_COLUMNS: u128 = 5_000_000;
/// Default column cap for `build` and `oracle`.
pub const DEFAULT_BUILD_COLUMNS: u128 = 100_000;
/// Default column cap for commands that run a dense SVD.
pub const DEFAULT_SVD_COLUMNS: u128 = 2_000;
/// The Boolean builder enumerates every multilinear multiplier.
pub const HARD_MAX_BOOLEAN_VARS: usize = 20;

pub mod exit {
    pub const OK: i32 = 0;
    pub const FAILURE: i32 = 1;
    pub const PARSE: i32 = 2;
    pub const CAPACITY: i32 = 3;
    pub const VERIFICATION: i32 = 4;
}

#[derive(Parser, Debug, Clone, Serialize)]
#[command(name = "boolmac", version, about = "Macaulay and Boolean Macaulay systems of Boolean quadratic systems")]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct Common {
    /// Root seed for every randomized step.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Failure budget.
    #[arg(long, global = true, default_value_t = 0.1)]
    pub eps: f64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Maximum number of columns of any materialized matrix.
    #[arg(long, global = true, env = "BOOLMAC_CAP")]
    pub cap: Option<u128>,
    /// Output file (default: standard output).
    #[arg(short, long, global = true)]
    pub output: Option<PathBuf>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Text,
    Csv,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum KindArg {
    Max,
    Total,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FlavorArg {
    Plain,
    Boolean,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BackendArg {
    Auto,
    LeastSquares,
    SolutionSet,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct DegreeArgs {
    #[arg(long, value_enum, default_value_t = FlavorArg::Boolean)]
    pub flavor: FlavorArg,
    /// Degree kind; Boolean matrices are always total degree.
    #[arg(long, value_enum)]
    pub degree_kind: Option<KindArg>,
    /// Degree (default n for Boolean, 3n for plain).
    #[arg(long)]
    pub d: Option<u32>,
}

impl DegreeArgs {
    pub fn resolve(&self, n: usize) -> crate::Result<(Flavor, DegreeKind)> {
        match self.flavor {
            FlavorArg::Boolean => {
                if self.degree_kind == Some(KindArg::Max) {
                    return Err(Error::InvalidArgument("Boolean Macaulay matrices use total degree".into()));
                }
                Ok((Flavor::Boolean, DegreeKind::Total(self.d.unwrap_or(n as u32))))
            }
            FlavorArg::Plain => {
                let d = self.d.unwrap_or(3 * n as u32);
                Ok((
                    Flavor::Plain,
                    match self.degree_kind.unwrap_or(KindArg::Max) {
                        KindArg::Max => DegreeKind::Max(d),
                        KindArg::Total => DegreeKind::Total(d),
                    },
                ))
            }
        }
    }
}

#[derive(Subcommand, Debug, Clone, Serialize)]
pub enum Command {
    /// Lift an F2 system to C, normalize constants, optionally append affine
    /// hashes; writes the system and a provenance sidecar.
    Reduce {
        input: PathBuf,
        /// Append k + 2 random affine hash equations.
        #[arg(long)]
        hash_k: Option<usize>,
    },
    /// Materialize a Macaulay or Boolean Macaulay matrix.
    Build {
        input: PathBuf,
        #[command(flatten)]
        degree: DegreeArgs,
    },
    /// Query matrix entries from row and column labels.
    Oracle {
        input: PathBuf,
        #[command(flatten)]
        degree: DegreeArgs,
        /// Row label `POLY:E1,...,EN` (polynomial index, multiplier exponents).
        #[arg(long)]
        row: Option<String>,
        /// Column label `E1,...,EN`.
        #[arg(long)]
        col: Option<String>,
        /// 0-based nonzero index within the row or column.
        #[arg(long)]
        k: Option<usize>,
    },
    /// Condition numbers of a system's matrix against the analytic bounds.
    Analyze {
        input: PathBuf,
        #[command(flatten)]
        degree: DegreeArgs,
    },
    /// Exact positive-definiteness certificates of the Gram minors.
    Lowerbound {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = KindArg::Max)]
        degree_kind: KindArg,
        /// Degree (default 3n).
        #[arg(long)]
        d: Option<u32>,
        /// `h^h/2` or a rational constant.
        #[arg(long, default_value = "h^h/2")]
        rule: String,
        /// Also run the single-matrix certificate (max degree 3n only).
        #[arg(long)]
        combined: bool,
    },
    /// Sample the solution state (C input) or run the full isolation
    /// pipeline (F2 input).
    Extract {
        input: PathBuf,
        /// Boolean Macaulay degree (default: number of variables).
        #[arg(long)]
        d: Option<u32>,
        /// l2 perturbation of the state before sampling.
        #[arg(long, default_value_t = 0.0)]
        noise: f64,
        #[arg(long, value_enum, default_value_t = BackendArg::Auto)]
        backend: BackendArg,
        /// Seeds per degree for the CSV trade-off table.
        #[arg(long, default_value_t = 200)]
        trials: usize,
    },
    /// Sweep (n, h) and compare the lower bounds with search costs and
    /// measured kappa_b of planted systems.
    Bench {
        /// Largest n.
        #[arg(long, default_value_t = 4)]
        n: usize,
        /// Restrict to one weight.
        #[arg(long)]
        h: Option<usize>,
        /// Planted instances per point.
        #[arg(long, default_value_t = 3)]
        planted: usize,
    },
}

/// Result of a subcommand: the report and whether its checks passed.
pub struct Outcome {
    pub body: String,
    pub verified: bool,
}

impl Outcome {
    fn ok(body: String) -> Self {
        Outcome { body, verified: true }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse { .. } => exit::PARSE,
        Error::CapacityExceeded { .. } => exit::CAPACITY,
        _ => exit::FAILURE,
    }
}

impl RunConfig {
    /// Provenance comment lines.
    pub fn header(&self, comment: &str) -> String {
        let config = serde_json::to_string(self).expect("serializable config");
        format!(
            "{comment} boolmac {VERSION}\n{comment} config {config}\n{comment} seed {}\n",
            self.common.seed
        )
    }

    pub fn build_cap(&self) -> crate::Result<u128> {
        self.cap_or(DEFAULT_BUILD_COLUMNS)
    }

    pub fn svd_cap(&self) -> crate::Result<u128> {
        self.cap_or(DEFAULT_SVD_COLUMNS)
    }

    fn cap_or(&self, default: u128) -> crate::Result<u128> {
        match self.common.cap {
            None => Ok(default),
            Some(c) if c > HARD_MAX_COLUMNS => Err(Error::CapacityExceeded {
                what: "requested column cap",
                requested: c,
                cap: HARD_MAX_COLUMNS,
            }),
            Some(c) => Ok(c),
        }
    }
}

pub fn dispatch(config: &RunConfig) -> crate::Result<Outcome> {
    match &config.command {
        Command::Reduce { input, hash_k } => commands::reduce(config, input, *hash_k),
        Command::Build { input, degree } => commands::build(config, input, degree),
        Command::Oracle {
            input,
            degree,
            row,
            col,
            k,
        } => commands::oracle(config, input, degree, row.as_deref(), col.as_deref(), *k),
        Command::Analyze { input, degree } => commands::analyze(config, input, degree),
        Command::Lowerbound {
            n,
            degree_kind,
            d,
            rule,
            combined,
        } => commands::lowerbound(config, *n, *degree_kind, *d, rule, *combined),
        Command::Extract {
            input,
            d,
            noise,
            backend,
            trials,
        } => commands::extract(config, input, *d, *noise, *backend, *trials),
        Command::Bench { n, h, planted } => bench::bench(config, *n, *h, *planted),
    }
}

/// Parses `args`, runs the subcommand and writes its report; returns the
/// exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let config = match RunConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { exit::PARSE } else { exit::OK };
            let rendered = e.render().to_string();
            let _ = if code == exit::OK {
                stdout.write_all(rendered.as_bytes())
            } else {
                stderr.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    let outcome = match dispatch(&config) {
        Ok(o) => o,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return exit_code(&e);
        }
    };
    let written = match &config.common.output {
        Some(path) => std::fs::write(path, &outcome.body).map_err(|source| Error::Io {
            path: path.clone(),
            source,
        }),
        None => stdout.write_all(outcome.body.as_bytes()).map_err(|source| Error::Io {
            path: "<stdout>".into(),
            source,
        }),
    };
    if let Err(e) = written {
        let _ = writeln!(stderr, "error: {e}");
        return exit::FAILURE;
    }
    if outcome.verified {
        exit::OK
    } else {
        let _ = writeln!(stderr, "verification failed");
        exit::VERIFICATION
    }
}
