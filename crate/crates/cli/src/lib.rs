//! The `phcalc` command line.
//!
//! [`run`] parses arguments, executes one subcommand and writes its result.
//! Exit codes: 0 success, 1 failure, 2 feasibility guard, 64 usage,
//! 65 malformed input data, 66 unreadable input file.

pub mod cache;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use num_rational::BigRational;
use phcalc_core::godel::{self, Code, CodeKind, CodecError};
use phcalc_core::{
    build_levels, konig_branch, monotone_subsequence, verify_counterexample, ArrowQuery, ArrowReport, Coloring,
    FiniteSet, ParamError, SearchConfig, SearchError,
};
use phcalc_formula::{ph_sentence, print, Format};
use serde::Deserialize;
use serde_json::{json, Value};
use thiserror::Error;

use cache::Cache;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_INFEASIBLE: i32 = 2;
pub const EXIT_USAGE: i32 = 64;
pub const EXIT_DATA: i32 = 65;
pub const EXIT_NO_INPUT: i32 = 66;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Failed(String),
    #[error("infeasible: {0}")]
    Infeasible(String),
    #[error("usage: {0}")]
    Usage(String),
    #[error("malformed input: {0}")]
    Data(String),
    #[error("cannot read {0}")]
    Input(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Failed(_) => EXIT_FAILURE,
            CliError::Infeasible(_) => EXIT_INFEASIBLE,
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Data(_) => EXIT_DATA,
            CliError::Input(_) => EXIT_NO_INPUT,
        }
    }
}

impl From<SearchError> for CliError {
    fn from(e: SearchError) -> Self {
        match e {
            SearchError::Infeasible(i) => CliError::Infeasible(i.to_string()),
            SearchError::Param(p) => p.into(),
        }
    }
}

impl From<ParamError> for CliError {
    fn from(e: ParamError) -> Self {
        CliError::Failed(e.to_string())
    }
}

impl From<CodecError> for CliError {
    fn from(e: CodecError) -> Self {
        match e {
            CodecError::TooLarge { .. } | CodecError::PrimeIndexTooLarge { .. } => CliError::Infeasible(e.to_string()),
            _ => CliError::Failed(e.to_string()),
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "phcalc", version, about = "Finite partition calculus and Gödel coding")]
struct Cli {
    /// Print machine-readable JSON for every subcommand.
    #[arg(long, global = true)]
    json: bool,
    /// JSON-lines file memoizing arrow results.
    #[arg(long, global = true, env = "PHCALC_CACHE")]
    cache: Option<PathBuf>,
    /// Worker threads for the arrow search.
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u16).range(1..))]
    threads: u16,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct ArrowArgs {
    #[arg(long)]
    m: u32,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    r: u32,
    #[arg(long)]
    k: usize,
    /// Require the homogeneous set to be relatively large.
    #[arg(long)]
    star: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide m → (k)^n_r, printing the report.
    Arrow(ArrowArgs),
    /// Least m ≤ cap with m → (k)^n_r.
    Least {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: u32,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        star: bool,
        #[arg(long)]
        cap: u32,
    },
    /// Check a counterexample certificate.
    Verify {
        #[arg(long)]
        file: PathBuf,
    },
    /// Levels of the counterexample tree.
    Tree {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: u32,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        star: bool,
        #[arg(long = "max-level")]
        max_level: u32,
        /// Print a root-to-leaf restriction chain instead of the levels.
        #[arg(long)]
        branch: bool,
    },
    /// Monotone subsequence of a comma-separated list of rationals.
    Mono {
        #[arg(long, allow_hyphen_values = true)]
        seq: String,
    },
    /// Encode a set, sequence or partition.
    Encode {
        #[command(subcommand)]
        what: EncodeCmd,
    },
    /// Decode a set, sequence or partition code.
    Decode {
        #[command(subcommand)]
        what: DecodeCmd,
    },
    /// Cantor pairing of x and y.
    Pair { x: BigUint, y: BigUint },
    /// Inverse of the pairing.
    Unpair { z: BigUint },
    /// The arithmetized statement at the given expansion level.
    Sentence {
        #[arg(long, default_value_t = 0, value_parser = clap::value_parser!(u8).range(0..=2))]
        level: u8,
        #[arg(long, value_enum, default_value_t = Fmt::Text)]
        fmt: Fmt,
    },
}

#[derive(Subcommand, Debug)]
enum EncodeCmd {
    /// Comma-separated naturals, in any order.
    Set { elements: Option<String> },
    /// Comma-separated naturals.
    Seq { elements: Option<String> },
    /// Coloring JSON from a file.
    Partition {
        #[arg(long)]
        file: PathBuf,
    },
}

#[derive(Subcommand, Debug)]
enum DecodeCmd {
    Set {
        value: BigUint,
    },
    Seq {
        value: BigUint,
    },
    Partition {
        value: BigUint,
        #[arg(long)]
        m: u32,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        c: u32,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Fmt {
    Text,
    Latex,
    Sexpr,
}

impl From<Fmt> for Format {
    fn from(f: Fmt) -> Format {
        match f {
            Fmt::Text => Format::Text,
            Fmt::Latex => Format::Latex,
            Fmt::Sexpr => Format::Sexpr,
        }
    }
}

/// A certificate file: Coloring JSON plus the target size.
#[derive(Deserialize)]
struct Certificate {
    #[serde(flatten)]
    coloring: Coloring,
    k: usize,
    #[serde(default)]
    starred: bool,
}

/// A result in both renderings; `text` is used unless `--json` is given.
struct Reply {
    json: Value,
    text: Option<String>,
}

impl Reply {
    fn json(json: Value) -> Reply {
        Reply { json, text: None }
    }

    fn both(json: Value, text: impl Into<String>) -> Reply {
        Reply {
            json,
            text: Some(text.into()),
        }
    }
}

/// Runs one invocation; `argv[0]` is the program name.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{text}");
                EXIT_OK
            } else {
                let _ = write!(err, "{text}");
                EXIT_USAGE
            };
        }
    };
    match execute(&cli) {
        Ok(reply) => {
            let body = match (&reply.text, cli.json) {
                (Some(text), false) => text.clone(),
                _ => reply.json.to_string(),
            };
            let _ = writeln!(out, "{body}");
            EXIT_OK
        }
        Err(e) => {
            let _ = writeln!(err, "phcalc: {e}");
            e.exit_code()
        }
    }
}

fn execute(cli: &Cli) -> Result<Reply, CliError> {
    let cfg = SearchConfig::with_threads(usize::from(cli.threads));
    let mut cache = cli.cache.as_deref().map(Cache::open).transpose()?;
    match &cli.command {
        Command::Arrow(a) => {
            let q = ArrowQuery::new(a.m, a.n, a.r, a.k, a.star)?;
            let report = arrow(&q, &cfg, cache.as_mut())?;
            Ok(Reply::json(to_json(&report)))
        }
        Command::Least { n, r, k, star, cap } => {
            let mut least = None;
            for m in 0..=*cap {
                let q = ArrowQuery::new(m, *n, *r, *k, *star)?;
                if arrow(&q, &cfg, cache.as_mut())?.holds {
                    least = Some(m);
                    break;
                }
            }
            let text = match least {
                Some(m) => m.to_string(),
                None => format!("none up to {cap}"),
            };
            let json = json!({"n": n, "r": r, "k": k, "starred": star, "cap": cap, "least": least});
            Ok(Reply::both(json, text))
        }
        Command::Verify { file } => {
            let cert: Certificate = read_json(file)?;
            let audit = verify_counterexample(&cert.coloring, cert.k, cert.starred)?;
            Ok(Reply::json(to_json(&audit)))
        }
        Command::Tree {
            n,
            r,
            k,
            star,
            max_level,
            branch,
        } => {
            let tree = build_levels(*n, *r, *k, *star, *max_level, &cfg)?;
            if !branch {
                return Ok(Reply::json(to_json(&tree)));
            }
            let sizes = tree.level_sizes();
            let json = match konig_branch(&tree) {
                Ok(chain) => json!({"levelSizes": sizes, "firstEmptyLevel": null, "branch": chain}),
                Err(_) => json!({"levelSizes": sizes, "firstEmptyLevel": tree.first_empty_level(), "branch": null}),
            };
            Ok(Reply::json(json))
        }
        Command::Mono { seq } => {
            let xs = parse_list::<BigRational>(seq)?;
            let idx = monotone_subsequence(&xs)?;
            let values: Vec<String> = idx.iter().map(|&i| xs[i].to_string()).collect();
            let text = values.join(",");
            Ok(Reply::both(json!({"indices": idx, "values": values}), text))
        }
        Command::Encode { what } => {
            let code = match what {
                EncodeCmd::Set { elements } => {
                    let xs = parse_list::<u32>(elements.as_deref().unwrap_or(""))?;
                    godel::encode_set(&FiniteSet::from_unsorted(xs))
                }
                EncodeCmd::Seq { elements } => {
                    let xs = parse_list::<BigUint>(elements.as_deref().unwrap_or(""))?;
                    godel::encode_seq(&xs)?
                }
                EncodeCmd::Partition { file } => {
                    let coloring: Coloring = read_json(file)?;
                    godel::encode_partition(&coloring)?
                }
            };
            Ok(code_reply(&code))
        }
        Command::Decode { what } => match what {
            DecodeCmd::Set { value } => {
                let set = godel::decode_set(value)?;
                let text = set.to_string();
                Ok(Reply::both(json!({"kind": "set", "elements": set.elements()}), text))
            }
            DecodeCmd::Seq { value } => {
                let xs: Vec<String> = godel::decode_seq(value)?.iter().map(BigUint::to_string).collect();
                let text = format!("<{}>", xs.join(","));
                Ok(Reply::both(json!({"kind": "seq", "elements": xs}), text))
            }
            DecodeCmd::Partition { value, m, n, c } => {
                let coloring = godel::decode_partition(value, *m, *n, *c)?;
                Ok(Reply::json(to_json(&coloring)))
            }
        },
        Command::Pair { x, y } => Ok(code_reply(&Code::new(godel::pair(x, y), CodeKind::Pair))),
        Command::Unpair { z } => {
            let (x, y) = godel::unpair(z);
            let text = format!("{x} {y}");
            Ok(Reply::both(json!({"x": x.to_string(), "y": y.to_string()}), text))
        }
        Command::Sentence { level, fmt } => {
            let text = print(&ph_sentence(*level), (*fmt).into());
            let json = json!({"level": level, "format": format!("{fmt:?}").to_lowercase(), "formula": text});
            Ok(Reply::both(json, text))
        }
    }
}

/// Cached arrow check; the cache is consulted before searching.
pub fn arrow(q: &ArrowQuery, cfg: &SearchConfig, cache: Option<&mut Cache>) -> Result<ArrowReport, CliError> {
    match cache {
        Some(cache) => {
            if let Some(hit) = cache.get(q) {
                return Ok(hit.clone());
            }
            let report = phcalc_core::arrow_check(q, cfg)?;
            cache.put(&report)?;
            Ok(report)
        }
        None => Ok(phcalc_core::arrow_check(q, cfg)?),
    }
}

fn code_reply(code: &Code) -> Reply {
    Reply::both(to_json(code), format!("{} = {}", code.value, code.factored()))
}

fn to_json<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("output types serialize")
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Data(format!("{}: {e}", path.display())))
}

fn parse_list<T: std::str::FromStr>(s: &str) -> Result<Vec<T>, CliError>
where
    T::Err: std::fmt::Display,
{
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<T>().map_err(|e| CliError::Usage(format!("`{t}`: {e}"))))
        .collect()
}
