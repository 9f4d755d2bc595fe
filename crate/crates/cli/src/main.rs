mod render;

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use homrine_core::corpus::{self, IDS};
use homrine_core::format::{self, AlgebraFile, FormatError, Loaded};
use homrine_core::report::{run, PipelineConfig, ReportFile, Stage, Verdict};

const FIELD_VAR: &str = "HOMRINE_FIELD";

#[derive(Parser)]
#[command(name = "homrine", version, about = "Exact analysis of split regular Hom-Lie Rinehart algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    global: GlobalOpts,
}

#[derive(Args)]
struct GlobalOpts {
    /// Longest twist orbit followed before giving up [default: 64]
    #[arg(long, global = true, value_name = "N")]
    orbit_bound: Option<usize>,
    /// Family length for the brute-force connection cross-check [default: 4]
    #[arg(long, global = true, value_name = "N")]
    chain_budget: Option<usize>,
    /// Write the full JSON report to this path
    #[arg(long, global = true, value_name = "OUT")]
    json: Option<PathBuf>,
    /// Print nothing on success
    #[arg(long, short, global = true)]
    quiet: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Check every axiom on basis tuples
    Validate { file: PathBuf },
    /// Root and weight space decomposition relative to H
    Split { file: PathBuf },
    /// Connection classes with witnesses, cross-checked by enumeration
    Connect { file: PathBuf },
    /// Ideals attached to each class and their closure properties
    Ideals { file: PathBuf },
    /// Tightness, symmetry, maximal length, multiplicativity, simple components
    Structure { file: PathBuf },
    /// Run the full pipeline and write the JSON report
    Report {
        file: PathBuf,
        /// Report destination; same as --json
        out: Option<PathBuf>,
    },
    /// Export a built-in example in canonical file form
    Corpus {
        /// Example identifier; omit to list them
        id: Option<String>,
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// Combine two algebra files into their direct sum
    DirectSum {
        first: PathBuf,
        second: PathBuf,
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug)]
enum CliError {
    Io(PathBuf, std::io::Error),
    Format(PathBuf, FormatError),
    Env(FormatError),
    Corpus(corpus::UnknownId),
    Other(String),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Io(p, e) => write!(f, "{}: {e}", p.display()),
            CliError::Format(p, e) => write!(f, "{}: {e}", p.display()),
            CliError::Env(e) => write!(f, "{FIELD_VAR}: {e}"),
            CliError::Corpus(e) => write!(f, "{e}"),
            CliError::Other(m) => f.write_str(m),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn exit_code(v: Verdict) -> u8 {
    match v {
        Verdict::Pass => 0,
        Verdict::Negative => 1,
        Verdict::Unsupported => 3,
    }
}

fn field_override() -> Result<Option<homrine_core::linalg::Field>, CliError> {
    match std::env::var(FIELD_VAR) {
        Ok(v) if !v.trim().is_empty() => format::parse_field(&v).map(Some).map_err(CliError::Env),
        _ => Ok(None),
    }
}

fn load(path: &Path) -> Result<Loaded, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Io(path.into(), e))?;
    format::parse(&text, field_override()?).map_err(|e| CliError::Format(path.into(), e))
}

fn write_text(path: Option<&Path>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| CliError::Io(p.into(), e)),
        None => {
            emit(text);
            Ok(())
        }
    }
}

/// Writes to stdout, treating a closed pipe as success.
fn emit(text: &str) {
    let mut out = io::stdout().lock();
    if let Err(e) = out.write_all(text.as_bytes()).and_then(|()| out.flush()) {
        if e.kind() != io::ErrorKind::BrokenPipe {
            eprintln!("error: writing output: {e}");
        }
    }
}

fn execute(cli: &Cli) -> Result<u8, CliError> {
    let g = &cli.global;
    let (file, target, out) = match &cli.command {
        Command::Validate { file } => (file, Stage::Validate, None),
        Command::Split { file } => (file, Stage::Split, None),
        Command::Connect { file } => (file, Stage::Connect, None),
        Command::Ideals { file } => (file, Stage::Ideals, None),
        Command::Structure { file } => (file, Stage::Structure, None),
        Command::Report { file, out } => (file, Stage::Structure, out.as_ref()),
        Command::Corpus { id: None, .. } => {
            if !g.quiet {
                let listing: String = IDS
                    .iter()
                    .map(|id| format!("{id:<4} {}\n", corpus::build(id).expect("registered").description))
                    .collect();
                emit(&listing);
            }
            return Ok(0);
        }
        Command::Corpus { id: Some(id), out } => {
            let e = corpus::build(id).map_err(CliError::Corpus)?;
            let text = AlgebraFile::export(&e.data, &e.h, None).to_canonical_string();
            write_text(out.as_deref(), &text)?;
            return Ok(0);
        }
        Command::DirectSum { first, second, out } => {
            let (a, b) = (load(first)?, load(second)?);
            let (data, h) = corpus::direct_sum(&a.data, &a.h, &b.data, &b.h)
                .map_err(|e| CliError::Other(format!("direct sum: {e}")))?;
            let text = AlgebraFile::export(&data, &h, None).to_canonical_string();
            write_text(out.as_deref(), &text)?;
            return Ok(0);
        }
    };
    let loaded = load(file)?;
    let defaults = PipelineConfig::default();
    let config = PipelineConfig {
        orbit_bound: g.orbit_bound.or(loaded.options.orbit_bound).unwrap_or(defaults.orbit_bound),
        chain_budget: g.chain_budget.or(loaded.options.chain_budget).unwrap_or(defaults.chain_budget),
        cross_check: target == Stage::Connect,
    };
    if config.orbit_bound == 0 {
        return Err(CliError::Other("--orbit-bound must be at least 1".into()));
    }
    let report = run(&loaded.data, &loaded.h, config, target);
    if let Some(path) = g.json.as_deref().or(out.map(PathBuf::as_path)) {
        write_report(path, &report)?;
    }
    if !g.quiet {
        emit(&render::summary(&loaded.data, &report));
    }
    Ok(exit_code(report.verdict))
}

fn write_report(path: &Path, report: &ReportFile) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(report).expect("serializable report");
    text.push('\n');
    fs::write(path, text).map_err(|e| CliError::Io(path.into(), e))
}
