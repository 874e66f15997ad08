//! Command-line front end.
//!
//! Exit codes are part of the interface and never go beyond these four:
//! 0 success (for `verify`: a confirmed counterexample), 1 a property
//! verdict went the wrong way, 2 usage or parse errors, 3 the resource
//! guard tripped. Results go to standard output, diagnostics to standard
//! error.

use std::fs;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use frankl_forge_core::closure::{
    sweep_bounded, union_closure_bounded, ClosureResult,
};
use frankl_forge_core::construct::{build_family, ConstructionParams};
use frankl_forge_core::verify::{
    intervals_disjoint, intervals_disjoint_oracle, verify_system,
};
use frankl_forge_core::{Error as CoreError, SetFamily};

use crate::report::{
    self, ClosureDoc, OracleDoc, OutputFormat, ReportError, VerifyDoc,
};
use crate::sf::{self, SfError};

pub const EXIT_OK: u8 = 0;
pub const EXIT_VIOLATION: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_RESOURCE: u8 = 3;

/// Closure-size resource guard, overridable via this environment variable.
pub const MAX_CLOSURE_ENV: &str = "FRANKL_FORGE_MAX_CLOSURE";
pub const DEFAULT_MAX_CLOSURE: usize = 10_000_000;

/// Refuse constructions whose sets alone would need more memory than this.
const MAX_SYSTEM_BYTES: u128 = 8 << 30;

#[derive(Debug, Parser)]
#[command(
    name = "frankl-forge",
    version,
    about = "Build, check, and measure set families that satisfy the pairing conditions yet have no abundant element"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Generate the paired family/filter system for a minimum set size
    Construct(ConstructArgs),
    /// Check a system: subset condition, non-interference, filter property,
    /// abundance, and structural lints
    Verify(VerifyArgs),
    /// Compute the union closure of a family and its size statistics
    Closure(ClosureArgs),
    /// Compare closure sizes against the conjectured formula over a range
    Sweep(SweepArgs),
    /// Cross-check the fast disjointness test against full interval
    /// enumeration on every pair of a constructed system
    OracleCheck(OracleCheckArgs),
}

#[derive(Debug, Args)]
struct ConstructArgs {
    /// Minimum member set size (at least 2); the universe is n = 4x + 4
    #[arg(short)]
    x: usize,
    /// Write to a file instead of standard output
    #[arg(short, long)]
    output: Option<PathBuf>,
    /// human emits the S/F text rows; json emits the pairs as element lists
    #[arg(long, value_enum, default_value = "human")]
    format: OutputFormat,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    /// S/F document to check; standard input when omitted or "-"
    input: Option<PathBuf>,
    /// Exit 0 whenever the pairing conditions hold, even if abundance holds
    #[arg(long)]
    require_reimer_only: bool,
    #[arg(long, value_enum, default_value = "human")]
    format: OutputFormat,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct ClosureArgs {
    /// Construct the family for this minimum set size
    #[arg(short, conflicts_with = "input")]
    x: Option<usize>,
    /// Read the family from an S/F document instead ("-" for stdin)
    #[arg(short, long)]
    input: Option<PathBuf>,
    /// Include the size histogram
    #[arg(long)]
    histogram: bool,
    /// List every closure member in canonical order
    #[arg(long)]
    list: bool,
    #[arg(long, value_enum, default_value = "human")]
    format: OutputFormat,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct SweepArgs {
    /// First x of the sweep (at least 2)
    #[arg(long)]
    from: usize,
    /// Last x of the sweep
    #[arg(long)]
    to: usize,
    #[arg(long, value_enum, default_value = "human")]
    format: OutputFormat,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct OracleCheckArgs {
    /// Minimum member set size of the system to cross-check
    #[arg(short)]
    x: usize,
    /// Enumeration budget: total interval members allowed per pair
    #[arg(long, default_value_t = 1 << 20)]
    budget: u64,
    #[arg(long, value_enum, default_value = "human")]
    format: OutputFormat,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

/// Everything that can stop a command, mapped to an exit code at the top.
#[derive(Debug)]
enum CommandError {
    Core(CoreError),
    Sf(SfError),
    Report(ReportError),
    Io(std::io::Error),
    Usage(String),
    Resource(String),
}

impl std::fmt::Display for CommandError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CommandError::Core(e) => write!(f, "{e}"),
            CommandError::Sf(e) => write!(f, "{e}"),
            CommandError::Report(e) => write!(f, "{e}"),
            CommandError::Io(e) => write!(f, "{e}"),
            CommandError::Usage(msg) | CommandError::Resource(msg) => write!(f, "{msg}"),
        }
    }
}

impl From<CoreError> for CommandError {
    fn from(e: CoreError) -> Self {
        CommandError::Core(e)
    }
}

impl From<SfError> for CommandError {
    fn from(e: SfError) -> Self {
        CommandError::Sf(e)
    }
}

impl From<ReportError> for CommandError {
    fn from(e: ReportError) -> Self {
        CommandError::Report(e)
    }
}

impl From<std::io::Error> for CommandError {
    fn from(e: std::io::Error) -> Self {
        CommandError::Io(e)
    }
}

impl CommandError {
    fn exit_code(&self) -> u8 {
        match self {
            CommandError::Core(CoreError::ClosureLimitExceeded { .. })
            | CommandError::Core(CoreError::OracleBudgetExceeded { .. })
            | CommandError::Resource(_) => EXIT_RESOURCE,
            _ => EXIT_USAGE,
        }
    }
}

/// Runs a parsed command line and returns the process exit code.
pub fn run(cli: Cli) -> u8 {
    let outcome = match cli.command {
        Command::Construct(args) => cmd_construct(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Closure(args) => cmd_closure(args),
        Command::Sweep(args) => cmd_sweep(args),
        Command::OracleCheck(args) => cmd_oracle_check(args),
    };
    match outcome {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            err.exit_code()
        }
    }
}

fn cmd_construct(args: ConstructArgs) -> Result<u8, CommandError> {
    let params = checked_params(args.x)?;
    let system = build_family(params);
    let text = match args.format {
        OutputFormat::Human => sf::emit_sf(&system),
        OutputFormat::Json => {
            let mut s = serde_json::to_string_pretty(&report::system_json(&system))
                .expect("system serializes");
            s.push('\n');
            s
        }
        OutputFormat::Csv => return Err(ReportError::CsvUnsupported.into()),
    };
    write_output(args.output.as_deref(), &text)?;
    Ok(EXIT_OK)
}

fn cmd_verify(args: VerifyArgs) -> Result<u8, CommandError> {
    let text = read_input(args.input.as_deref())?;
    let system = sf::parse_sf(&text)?;
    let report = verify_system(&system);
    let doc = VerifyDoc {
        n: system.universe_size(),
        x: system.smalls().min_member_size().unwrap_or(0),
        pair_count: system.len(),
        report: &report,
    };
    let rendered = report::render_verification(&doc, args.format)?;
    write_output(args.output.as_deref(), &rendered)?;
    let accepted = if args.require_reimer_only {
        report.reimer_ok()
    } else {
        report.is_counterexample()
    };
    Ok(if accepted { EXIT_OK } else { EXIT_VIOLATION })
}

fn cmd_closure(args: ClosureArgs) -> Result<u8, CommandError> {
    let family = match (args.x, &args.input) {
        (Some(x), None) => build_family(checked_params(x)?).smalls(),
        (None, Some(path)) => sf::parse_sf(&read_input(Some(path))?)?.smalls(),
        (None, None) => {
            return Err(CommandError::Usage(String::from(
                "closure needs either -x or --input",
            )))
        }
        (Some(_), Some(_)) => unreachable!("clap enforces the conflict"),
    };
    let result = closure_with_guard(&family)?;
    let doc = ClosureDoc {
        n: family.universe_size(),
        x: family.min_member_size().unwrap_or(0),
        result: &result,
        show_histogram: args.histogram,
        list_members: args.list,
    };
    let rendered = report::render_closure(&doc, args.format)?;
    write_output(args.output.as_deref(), &rendered)?;
    Ok(EXIT_OK)
}

fn cmd_sweep(args: SweepArgs) -> Result<u8, CommandError> {
    checked_params(args.from)?;
    let rows = sweep_bounded(args.from, args.to, max_closure_from_env()?)?;
    let rendered = report::render_sweep(&rows, args.format)?;
    write_output(args.output.as_deref(), &rendered)?;
    Ok(EXIT_OK)
}

fn cmd_oracle_check(args: OracleCheckArgs) -> Result<u8, CommandError> {
    let params = checked_params(args.x)?;
    let system = build_family(params);
    let pairs = system.pairs();
    let mut disagreements = Vec::new();
    let mut checked = 0usize;
    for p in 0..pairs.len() {
        for q in p + 1..pairs.len() {
            let (sp, fp) = &pairs[p];
            let (sq, fq) = &pairs[q];
            let fast = intervals_disjoint(sp, fp, sq, fq)?;
            let slow = intervals_disjoint_oracle(sp, fp, sq, fq, args.budget)?;
            checked += 1;
            if fast != slow {
                disagreements.push((p, q, fast, slow));
            }
        }
    }
    let doc = OracleDoc {
        x: params.x(),
        n: params.universe_size(),
        pairs_checked: checked,
        budget: args.budget,
        disagreements,
    };
    let rendered = report::render_oracle(&doc, args.format)?;
    write_output(args.output.as_deref(), &rendered)?;
    Ok(if doc.disagreements.is_empty() {
        EXIT_OK
    } else {
        EXIT_VIOLATION
    })
}

/// Validates `x` and refuses universes whose sets alone would exhaust
/// memory, so huge parameters fail fast instead of aborting on allocation.
fn checked_params(x: usize) -> Result<ConstructionParams, CommandError> {
    let params = ConstructionParams::new(x)?;
    let n = params.universe_size() as u128;
    let bytes_per_set = n.div_ceil(64) * 8;
    let estimate = (n + 3) * 2 * bytes_per_set * 2;
    if estimate > MAX_SYSTEM_BYTES {
        return Err(CommandError::Resource(format!(
            "x = {x} needs roughly {estimate} bytes of sets; refusing (limit {MAX_SYSTEM_BYTES})"
        )));
    }
    Ok(params)
}

fn closure_with_guard(family: &SetFamily) -> Result<ClosureResult, CommandError> {
    Ok(union_closure_bounded(family, max_closure_from_env()?)?)
}

fn max_closure_from_env() -> Result<usize, CommandError> {
    match std::env::var(MAX_CLOSURE_ENV) {
        Ok(raw) => raw.trim().parse().map_err(|_| {
            CommandError::Usage(format!(
                "{MAX_CLOSURE_ENV} must be a positive integer, got {raw:?}"
            ))
        }),
        Err(std::env::VarError::NotPresent) => Ok(DEFAULT_MAX_CLOSURE),
        Err(err) => Err(CommandError::Usage(format!("{MAX_CLOSURE_ENV}: {err}"))),
    }
}

fn read_input(path: Option<&Path>) -> Result<String, CommandError> {
    match path {
        None => read_stdin(),
        Some(p) if p.as_os_str() == "-" => read_stdin(),
        Some(p) => Ok(fs::read_to_string(p)?),
    }
}

fn read_stdin() -> Result<String, CommandError> {
    let mut buffer = String::new();
    std::io::stdin().read_to_string(&mut buffer)?;
    Ok(buffer)
}

fn write_output(path: Option<&Path>, content: &str) -> Result<(), CommandError> {
    match path {
        None => {
            std::io::stdout().write_all(content.as_bytes())?;
            Ok(())
        }
        Some(p) => Ok(fs::write(p, content)?),
    }
}
