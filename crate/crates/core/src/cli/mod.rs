//! Command-line front end.
//!
//! Every subcommand writes one artifact (JSON or CSV) to `--out` or standard
//! output. A flat `key = value` config file given by `--config` supplies
//! defaults for any flag; flags on the command line win. Exit codes: 0 on
//! success, 2 on invalid input, 3 when a numerical check fails.

mod commands;
mod selftest;

use std::ffi::OsString;
use std::fs;
use std::io::Write;

use clap::{ArgAction, Args, CommandFactory, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::ensembles::default_workers;
use crate::error::Error;

/// Schema tag of structured errors on standard error.
pub const ERROR_SCHEMA: &str = "rmt-source/error/v1";

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_CHECK_FAILED: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "rmt-source",
    version,
    about = "Random matrix ensembles with a source: samplers, averaged characteristic polynomials, duality checks and soft-edge limits",
    args_override_self = true
)]
pub struct Cli {
    /// Flat `key = value` file of flag defaults.
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<String>,

    /// Base seed of all random streams.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    /// Worker streams and threads (default: $RMT_SOURCE_WORKERS or 4).
    #[arg(long, global = true)]
    pub workers: Option<usize>,

    /// Output path; standard output when absent.
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<String>,

    /// Output format; each command has its own default.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate a special function.
    #[command(args_override_self = true)]
    Specfun(SpecfunArgs),
    /// Draw eigenvalue samples.
    #[command(args_override_self = true)]
    Sample(SampleArgs),
    /// Evaluate an averaged characteristic polynomial.
    #[command(args_override_self = true)]
    Charpoly(CharpolyArgs),
    /// Run a two-sided duality check.
    #[command(args_override_self = true)]
    Duality(DualityArgs),
    /// Tabulate a soft-edge scaling limit.
    #[command(args_override_self = true)]
    Softedge(SoftedgeArgs),
    /// Run the fast invariant suite.
    Selftest,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SpecfunName {
    Hermite,
    Laguerre,
    Airy,
    IncompleteAiry,
    IncompleteHermite,
    Hyp0f1,
}

#[derive(Debug, Args)]
pub struct SpecfunArgs {
    #[arg(long = "fn", value_enum)]
    pub function: SpecfunName,
    /// Degree (Hermite, Laguerre, incomplete Hermite).
    #[arg(long)]
    pub n: Option<usize>,
    /// Argument (`u` for the incomplete Hermite function).
    #[arg(long, allow_negative_numbers = true)]
    pub x: Option<f64>,
    /// Laguerre parameter, or the incomplete Hermite shifts.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, action = ArgAction::Set)]
    pub a: Vec<f64>,
    /// Incomplete Airy shifts.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, action = ArgAction::Set)]
    pub s: Vec<f64>,
    /// `0F1` parameter.
    #[arg(long, allow_negative_numbers = true)]
    pub c: Option<f64>,
    /// Laguerre: return `e^{-x/2} L`.
    #[arg(long)]
    pub weighted: bool,
    /// Use the contour-integral route where one exists.
    #[arg(long)]
    pub contour: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EnsembleName {
    Goe,
    Gue,
    WishartReal,
    WishartComplex,
    Beta,
    MeWeight,
}

#[derive(Debug, Args)]
pub struct SampleArgs {
    #[arg(long, value_enum)]
    pub ensemble: EnsembleName,
    #[arg(long, allow_negative_numbers = true)]
    pub beta: Option<f64>,
    /// Gaussian source.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, action = ArgAction::Set)]
    pub s: Vec<f64>,
    /// Weight constant `c` of `exp(-c y^2)` (me-weight).
    #[arg(long, allow_negative_numbers = true)]
    pub c: Option<f64>,
    /// Wishart rows.
    #[arg(long)]
    pub n: Option<usize>,
    /// Wishart columns.
    #[arg(long)]
    pub p: Option<usize>,
    /// Wishart source.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, action = ArgAction::Set)]
    pub mu: Vec<f64>,
    #[arg(long, default_value_t = 1000)]
    pub samples: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Route {
    Quadrature,
    Combinatorial,
    Series,
    Integral,
}

#[derive(Debug, Args)]
#[command(group = clap::ArgGroup::new("kind").required(true).args(["gauss", "chiral", "wishart", "box_"]))]
pub struct CharpolyArgs {
    /// Gaussian ensemble with source `s`.
    #[arg(long)]
    pub gauss: bool,
    /// Chiral ensemble (`n x p`) with source `s`.
    #[arg(long)]
    pub chiral: bool,
    /// Wishart ensemble (`n` rows, `p` columns) with source `m`.
    #[arg(long)]
    pub wishart: bool,
    /// Multiple Laguerre form with parameter `a` and source `m`.
    #[arg(long = "box")]
    pub box_: bool,
    #[arg(long = "N")]
    pub big_n: Option<usize>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub p: Option<usize>,
    #[arg(long, allow_negative_numbers = true)]
    pub a: Option<f64>,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, action = ArgAction::Set)]
    pub s: Vec<f64>,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, action = ArgAction::Set)]
    pub m: Vec<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub lambda: f64,
    #[arg(long, value_enum)]
    pub route: Option<Route>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CheckName {
    W2,
    Fr,
    Dr1,
    Dr2,
}

#[derive(Debug, Args)]
pub struct DualityArgs {
    #[arg(long, value_enum)]
    pub check: CheckName,
    #[arg(long, allow_negative_numbers = true)]
    pub beta: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub alpha: Option<f64>,
    #[arg(long = "N")]
    pub big_n: Option<usize>,
    #[arg(long)]
    pub n: Option<usize>,
    /// Evaluation point (w2) or source (fr).
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, action = ArgAction::Set)]
    pub x: Vec<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub lambda: Option<f64>,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, action = ArgAction::Set)]
    pub xi: Vec<f64>,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, action = ArgAction::Set)]
    pub sigma: Vec<f64>,
    #[arg(long)]
    pub a: Option<usize>,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, action = ArgAction::Set)]
    pub s: Vec<f64>,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, action = ArgAction::Set)]
    pub m: Vec<f64>,
    #[arg(long, default_value_t = crate::duality::DEFAULT_SAMPLES)]
    pub samples: usize,
    #[arg(long, default_value_t = crate::duality::DEFAULT_THRESHOLD)]
    pub threshold: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EdgeName {
    Classic,
    Gauss,
    Chiral,
    Szego,
}

#[derive(Debug, Args)]
pub struct SoftedgeArgs {
    #[arg(long, value_enum)]
    pub which: EdgeName,
    /// Number of source entries at the edge (gauss).
    #[arg(long)]
    pub r: Option<usize>,
    /// Scaled spectral variables; one table block per value.
    #[arg(long = "X", value_delimiter = ',', allow_hyphen_values = true, action = ArgAction::Set)]
    pub big_x: Vec<f64>,
    /// Scaled source (`r` entries for gauss, one for chiral).
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, action = ArgAction::Set)]
    pub s: Vec<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub a: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub k: Option<i32>,
    #[arg(long, value_delimiter = ',', action = ArgAction::Set)]
    pub sizes: Vec<usize>,
}

/// Failure of a CLI run, mapped to an exit code.
#[derive(Debug)]
pub enum CliError {
    Invalid(String),
    Numerical(Error),
    CheckFailed(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidArgument(_)
            | Error::LaguerreParameter(_)
            | Error::Hyp0f1Pole(_)
            | Error::PochhammerPole { .. }
            | Error::DegreeLimit { .. }
            | Error::Io(_) => CliError::Invalid(e.to_string()),
            Error::CheckFailed(msg) => CliError::CheckFailed(msg),
            other => CliError::Numerical(other),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Invalid(e.to_string())
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Invalid(_) => EXIT_INVALID,
            CliError::Numerical(_) | CliError::CheckFailed(_) => EXIT_CHECK_FAILED,
        }
    }

    pub fn to_json(&self) -> String {
        let (kind, message) = match self {
            CliError::Invalid(m) => ("invalid", m.clone()),
            CliError::Numerical(e) => ("numerical", e.to_string()),
            CliError::CheckFailed(m) => ("check-failed", m.clone()),
        };
        json!({"schema": ERROR_SCHEMA, "kind": kind, "exit": self.exit_code(), "message": message})
            .to_string()
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

/// Parses a flat config file: one `key = value` per line, `#` comments.
pub fn parse_config(text: &str) -> CliResult<Vec<(String, String)>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line.split_once('=').ok_or_else(|| {
            CliError::Invalid(format!("config line {}: expected key = value", i + 1))
        })?;
        let (k, v) = (k.trim(), v.trim());
        if k.is_empty() {
            return Err(CliError::Invalid(format!(
                "config line {}: empty key",
                i + 1
            )));
        }
        out.push((k.to_string(), v.to_string()));
    }
    Ok(out)
}

const SUBCOMMANDS: [&str; 6] = [
    "specfun", "sample", "charpoly", "duality", "softedge", "selftest",
];

fn find_config_path(args: &[OsString]) -> CliResult<Option<String>> {
    let mut it = args.iter().skip(1);
    while let Some(a) = it.next() {
        let a = a.to_string_lossy();
        if a == "--config" {
            return match it.next() {
                Some(p) => Ok(Some(p.to_string_lossy().into_owned())),
                None => Err(CliError::Invalid("--config needs a path".into())),
            };
        }
        if let Some(p) = a.strip_prefix("--config=") {
            return Ok(Some(p.to_string()));
        }
    }
    Ok(None)
}

/// Splices config entries into the argument list right after the
/// subcommand, so that later command-line flags override them.
fn merge_config(args: Vec<OsString>, entries: &[(String, String)]) -> CliResult<Vec<OsString>> {
    let mut command: Option<String> = None;
    let mut flags = Vec::new();
    for (k, v) in entries {
        if k == "command" {
            command = Some(v.clone());
            continue;
        }
        if k == "config" {
            return Err(CliError::Invalid("config files cannot nest".into()));
        }
        flags.push((k.clone(), v.clone()));
    }
    let pos = args
        .iter()
        .position(|a| SUBCOMMANDS.contains(&a.to_string_lossy().as_ref()));
    let (mut head, tail, sub) = match pos {
        Some(p) => {
            let sub = args[p].to_string_lossy().into_owned();
            if let Some(c) = &command {
                if *c != sub {
                    return Err(CliError::Invalid(format!(
                        "config command `{c}` conflicts with `{sub}`"
                    )));
                }
            }
            (args[..=p].to_vec(), args[p + 1..].to_vec(), sub)
        }
        None => {
            let c = command.ok_or_else(|| CliError::Invalid("no subcommand given".into()))?;
            let mut head = args.clone();
            head.push(c.clone().into());
            (head, Vec::new(), c)
        }
    };
    let mut root = Cli::command();
    root.build();
    let subcmd = root
        .find_subcommand(&sub)
        .ok_or_else(|| CliError::Invalid(format!("unknown subcommand `{sub}`")))?;
    for (k, v) in flags {
        let arg = subcmd
            .get_arguments()
            .chain(root.get_arguments())
            .find(|a| a.get_long() == Some(k.as_str()))
            .ok_or_else(|| CliError::Invalid(format!("unknown config key `{k}`")))?;
        if arg.get_num_args().is_some_and(|r| r.takes_values()) {
            head.push(format!("--{k}={v}").into());
        } else {
            match v.as_str() {
                "true" => head.push(format!("--{k}").into()),
                "false" => {}
                _ => {
                    return Err(CliError::Invalid(format!(
                        "config key `{k}` expects true/false"
                    )))
                }
            }
        }
    }
    head.extend(tail);
    Ok(head)
}

/// Runs the CLI on `args` (including the program name), writing artifacts to
/// `stdout` unless `--out` is given and errors to `stderr`. Returns the exit
/// code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    match parse_and_run(args, stdout) {
        Ok(code) => code,
        Err(Exit::Clap(e)) => {
            let code = e.exit_code();
            if code == 0 {
                let _ = write!(stdout, "{e}");
                return EXIT_OK;
            }
            let err = CliError::Invalid(e.kind().to_string());
            let _ = writeln!(stderr, "{}", err.to_json());
            let _ = write!(stderr, "{}", e.render());
            EXIT_INVALID
        }
        Err(Exit::Cli(e)) => {
            let _ = writeln!(stderr, "{}", e.to_json());
            e.exit_code()
        }
    }
}

enum Exit {
    Clap(clap::Error),
    Cli(CliError),
}

impl From<CliError> for Exit {
    fn from(e: CliError) -> Self {
        Exit::Cli(e)
    }
}

fn parse_and_run(args: Vec<OsString>, stdout: &mut dyn Write) -> Result<i32, Exit> {
    let args = match find_config_path(&args)? {
        Some(path) => {
            let text = fs::read_to_string(&path)
                .map_err(|e| CliError::Invalid(format!("reading config {path}: {e}")))?;
            merge_config(args, &parse_config(&text)?)?
        }
        None => args,
    };
    let cli = Cli::try_parse_from(args).map_err(Exit::Clap)?;
    let workers = cli.workers.unwrap_or_else(default_workers);
    if workers == 0 {
        return Err(CliError::Invalid("workers must be >= 1".into()).into());
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| CliError::Invalid(e.to_string()))?;
    let ctx = commands::Context {
        seed: cli.seed,
        workers,
        format: cli.format,
    };
    let outcome = pool.install(|| commands::dispatch(&cli.command, &ctx))?;
    match &cli.out {
        Some(path) => fs::write(path, &outcome.bytes).map_err(CliError::from)?,
        None => match stdout.write_all(&outcome.bytes) {
            // a closed reader (`| head`) is not an error
            Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => {}
            r => r.map_err(CliError::from)?,
        },
    }
    if let Some(msg) = outcome.failure {
        return Err(CliError::CheckFailed(msg).into());
    }
    Ok(EXIT_OK)
}
