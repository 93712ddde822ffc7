mod commands;
mod config;
mod output;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use qhecke::integral::IntegralQuery;
use qhecke::tableaux::{Partition, ZPartition};
use qhecke::Error;

use commands::{ElementSource, IntegralRequest};
use config::{Overrides, RunConfig};

/// An argument that parsed but does not have the expected shape.
#[derive(Debug)]
pub struct UsageError {
    pub message: String,
    pub expected: String,
}

impl UsageError {
    pub fn new(message: impl Into<String>, expected: impl Into<String>) -> Self {
        UsageError {
            message: message.into(),
            expected: expected.into(),
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "qhecke", version, about = "Hecke algebras, quantum dimensions and integrals on matrix quantum groups")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_parser = ["json", "table"])]
    format: Option<String>,
    /// key=value configuration file; flags take precedence.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Idempotent cache directory.
    #[arg(long, global = true, env = "QHECKE_CACHE")]
    cache: Option<PathBuf>,
    /// Evaluate at v = V0 (a positive rational other than 1) instead of over Q(v).
    #[arg(long, global = true, value_name = "V0")]
    numeric: Option<String>,
    #[arg(long, global = true)]
    max_degree: Option<usize>,
    #[arg(long, global = true)]
    max_entries: Option<usize>,
    /// Write the result here instead of standard output.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct ShapeArg {
    /// Partition such as "[2,1]".
    #[arg(long)]
    shape: String,
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct IntegralTarget {
    /// "I=1,2;J=2,1;K=..;L=.." (K and L only for hr).
    #[arg(long)]
    indices: Option<String>,
    /// Every non-zero value in degree N.
    #[arg(long, value_name = "N")]
    table: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Primitive idempotent E_{i,lambda}.
    Idempotent {
        #[command(flatten)]
        shape: ShapeArg,
        /// 0-based index of the standard tableau.
        #[arg(long, default_value_t = 0)]
        index: usize,
    },
    /// Central idempotent F_lambda.
    Central {
        #[command(flatten)]
        shape: ShapeArg,
    },
    /// Dimension of a simple comodule.
    Qdim {
        /// Partition or Z-partition such as "[2,0,-1]".
        #[arg(long)]
        shape: String,
        #[arg(long)]
        rank: usize,
        #[arg(long, default_value = "rdim", value_parser = ["rdim", "edim", "normalized"])]
        which: String,
        #[arg(long, default_value = "closed", value_parser = ["closed", "combinatorial", "det"])]
        route: String,
    },
    /// Tensor product decomposition of two simple comodules.
    Fuse {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        #[arg(long)]
        rank: usize,
    },
    /// Check a Hecke symmetry: builtin:dj<d>, builtin:super<m>_<n> or a JSON file.
    Certify {
        #[arg(long)]
        rmatrix: String,
    },
    /// Rank of a Hecke symmetry from the exterior algebra dimensions.
    Rank {
        #[arg(long)]
        rmatrix: String,
        #[arg(long, default_value_t = qhecke::rmatrix::DEFAULT_RANK_CUTOFF)]
        cutoff: usize,
    },
    /// Values of the integral on H_R or SH_R.
    Integral {
        #[arg(long, value_parser = ["hr", "shr"])]
        group: String,
        #[arg(long)]
        rmatrix: String,
        #[command(flatten)]
        target: IntegralTarget,
    },
    /// Conditional traces and the quantum trace of an element of H_n.
    Trace {
        #[arg(long, required_unless_present = "element", conflicts_with = "element")]
        shape: Option<String>,
        #[arg(long, conflicts_with = "central")]
        index: Option<usize>,
        /// Use the central idempotent of the shape.
        #[arg(long)]
        central: bool,
        /// Hecke element as JSON {"n": .., "terms": [{"w": "2 1", "c": ..}]}.
        #[arg(long)]
        element: Option<PathBuf>,
        #[arg(long)]
        rank: usize,
        /// Apply tr^n, tr^{n-1}, ... this many times; without it the quantum
        /// trace (including the twist) is returned.
        #[arg(long)]
        steps: Option<usize>,
    },
    /// Cross-route consistency checks.
    Selftest,
}

enum Failure {
    Usage(UsageError),
    Domain(Error),
}

impl From<UsageError> for Failure {
    fn from(e: UsageError) -> Self {
        Failure::Usage(e)
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

const SHAPE_FORMAT: &str = "partition \"[3,1,1]\" (Z-partitions such as \"[2,0,-1]\" where allowed)";
const INDEX_FORMAT: &str = "\"I=1,2;J=2,1;K=1,2;L=2,1\" with 1-based entries; K, L omitted for shr";

fn partition(s: &str) -> Result<Partition, UsageError> {
    Partition::parse(s).map_err(|e| UsageError::new(e.to_string(), SHAPE_FORMAT))
}

fn zpartition(s: &str) -> Result<(), UsageError> {
    ZPartition::parse(s)
        .map(|_| ())
        .map_err(|e| UsageError::new(e.to_string(), SHAPE_FORMAT))
}

fn run(cli: Cli, cfg: &RunConfig) -> Result<(Value, bool), Failure> {
    let ok = |v: Value| Ok((v, true));
    match cli.command {
        Command::Idempotent { shape, index } => {
            let shape = partition(&shape.shape)?;
            ok(commands::element(cfg, &ElementSource::Primitive { shape, index })?)
        }
        Command::Central { shape } => {
            let shape = partition(&shape.shape)?;
            ok(commands::element(cfg, &ElementSource::Central(shape))?)
        }
        Command::Qdim { shape, rank, which, route } => {
            zpartition(&shape)?;
            ok(commands::qdim(cfg, &shape, rank, &which, &route)?)
        }
        Command::Fuse { a, b, rank } => {
            zpartition(&a)?;
            zpartition(&b)?;
            ok(commands::fuse(&a, &b, rank)?)
        }
        Command::Certify { rmatrix } => ok(commands::certify(&rmatrix)?),
        Command::Rank { rmatrix, cutoff } => ok(commands::rank(&rmatrix, cutoff)?),
        Command::Integral { group, rmatrix, target } => {
            let req = match (target.indices, target.table) {
                (Some(text), _) => {
                    IntegralQuery::parse(&text, usize::MAX).map_err(|e| UsageError::new(e.to_string(), INDEX_FORMAT))?;
                    IntegralRequest::Query(text)
                }
                (None, Some(n)) => IntegralRequest::Table(n),
                (None, None) => unreachable!("clap enforces the group"),
            };
            ok(commands::integral(cfg, &group, &rmatrix, &req)?)
        }
        Command::Trace { shape, index, central, element, rank, steps } => {
            let source = match (shape, element) {
                (Some(s), _) => {
                    let shape = partition(&s)?;
                    if central {
                        ElementSource::Central(shape)
                    } else {
                        ElementSource::Primitive { shape, index: index.unwrap_or(0) }
                    }
                }
                (None, Some(path)) => ElementSource::File(path),
                (None, None) => unreachable!("clap requires one of them"),
            };
            ok(commands::trace(cfg, &source, rank, steps)?)
        }
        Command::Selftest => Ok(commands::selftest(cfg)?),
    }
}

fn error_json(e: &Error) -> Value {
    let mut obj = json!({"kind": e.kind(), "message": e.to_string()});
    if let Error::NotYangBaxter(res) | Error::NotHecke(res) = e {
        obj["residuals"] = res
            .iter()
            .map(|r| json!({"row": r.row, "col": r.col, "value": r.value}))
            .collect();
    }
    json!({"error": obj})
}

fn emit(cfg: &RunConfig, value: &Value) -> std::io::Result<()> {
    let text = output::render(value, cfg.format);
    match &cfg.output {
        Some(path) => std::fs::write(path, text),
        None => std::io::stdout().write_all(text.as_bytes()),
    }
}

fn usage_failure(e: &UsageError) -> ExitCode {
    let v = json!({"error": {"kind": "UsageError", "message": e.message, "expected": e.expected}});
    print!("{}", output::render(&v, config::Format::Json));
    ExitCode::from(2)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let overrides = Overrides {
        numeric: cli.numeric.clone(),
        max_degree: cli.max_degree,
        max_entries: cli.max_entries,
        cache: None,
        format: cli.format.clone(),
        output: cli.output.clone(),
    };
    // clap already merged QHECKE_CACHE into --cache; it outranks the file.
    let cfg = match RunConfig::resolve(cli.config.as_deref(), cli.cache.clone(), &overrides) {
        Ok(cfg) => cfg,
        Err(e) => return usage_failure(&e),
    };
    let (value, code) = match run(cli, &cfg) {
        Ok((v, true)) => (v, ExitCode::SUCCESS),
        Ok((v, false)) => (v, ExitCode::from(1)),
        Err(Failure::Usage(e)) => return usage_failure(&e),
        Err(Failure::Domain(e)) => (error_json(&e), ExitCode::from(1)),
    };
    if let Err(e) = emit(&cfg, &value) {
        eprintln!("qhecke: cannot write output: {e}");
        return ExitCode::from(1);
    }
    code
}
