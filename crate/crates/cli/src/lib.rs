//! Command-line front end for the `sharpblunt` tables.

pub mod emit;
pub mod explain;
pub mod oracle;
pub mod record;
pub mod select;
pub mod verify;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use emit::Format;
use record::{build_rows, BuildError, Kind, ModeArg};
use select::{resolve_types, OmegaSelector, RankRange, UsageError};
use verify::Scope;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "sharpblunt", version, about = "Sharp and blunt triples of affine Weyl groups")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// List sharp, strictly sharp, blunt or strictly blunt data.
    Classify {
        #[arg(value_enum)]
        kind: ClassifyKind,
        #[command(flatten)]
        q: QueryArgs,
    },
    /// Table of iota and its enhancement by theta.
    Bijection {
        #[command(flatten)]
        q: QueryArgs,
    },
    /// The multiset theta(W', omega).
    Theta {
        #[command(flatten)]
        q: QueryArgs,
    },
    /// Run the verification harness.
    Verify {
        #[arg(long, value_enum, default_value = "all")]
        scope: ScopeArg,
        #[arg(long, env = "SHARPBLUNT_MAX_RANK", default_value_t = 64)]
        max_rank: usize,
        #[arg(long, value_enum, default_value = "json")]
        format: FormatArg,
        /// Add wall-clock timings (the report is then not reproducible).
        #[arg(long)]
        timings: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the conventions used by every command.
    Explain {
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args, Debug)]
pub struct QueryArgs {
    /// Full type (E8, C5) or a family letter together with --rank.
    #[arg(long = "type")]
    pub ty: String,
    /// A rank or an inclusive range such as 2..20.
    #[arg(long)]
    pub rank: Option<String>,
    /// all, trivial, nontrivial, generator, in-underline, not-in-underline, index:k
    #[arg(long, default_value = "all")]
    pub omega: String,
    #[arg(long, value_enum, default_value = "normative")]
    pub mode: ModeValue,
    #[arg(long, value_enum, default_value = "table")]
    pub format: FormatArg,
    #[arg(long, env = "SHARPBLUNT_MAX_RANK", default_value_t = 64)]
    pub max_rank: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum ClassifyKind {
    Sharp,
    StrictlySharp,
    Blunt,
    StrictlyBlunt,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum ModeValue {
    Normative,
    Literal,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum FormatArg {
    Table,
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum ScopeArg {
    All,
    Tables,
    Lemma27,
    Counts,
    Backends,
    Correspondence,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Table => Format::Table,
            FormatArg::Json => Format::Json,
            FormatArg::Csv => Format::Csv,
        }
    }
}

impl From<ScopeArg> for Scope {
    fn from(s: ScopeArg) -> Self {
        match s {
            ScopeArg::All => Scope::All,
            ScopeArg::Tables => Scope::Tables,
            ScopeArg::Lemma27 => Scope::Lemma27,
            ScopeArg::Counts => Scope::Counts,
            ScopeArg::Backends => Scope::Backends,
            ScopeArg::Correspondence => Scope::Correspondence,
        }
    }
}

fn open_out(out: &Option<PathBuf>) -> io::Result<Box<dyn Write>> {
    Ok(match out {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn query(kind: Kind, q: &QueryArgs) -> Result<i32, BuildError> {
    let rank = q.rank.as_deref().map(str::parse::<RankRange>).transpose()?;
    let types = resolve_types(&q.ty, rank.as_ref(), q.max_rank)?;
    let sel: OmegaSelector = q.omega.parse()?;
    let mode = match q.mode {
        ModeValue::Normative => ModeArg::Normative,
        ModeValue::Literal => ModeArg::Literal,
    };
    let rows = build_rows(kind, &types, sel, mode)?;
    let mut out = open_out(&q.out).map_err(io_usage)?;
    emit::write_rows(&mut out, q.format.into(), kind.columns(), &rows).map_err(io_usage)?;
    out.flush().map_err(io_usage)?;
    Ok(EXIT_OK)
}

fn io_usage(e: io::Error) -> BuildError {
    BuildError::Usage(UsageError(format!("cannot write output: {e}")))
}

fn verify_cmd(scope: Scope, max_rank: usize, format: Format, timings: bool, out: &Option<PathBuf>) -> Result<i32, BuildError> {
    let report = verify::run(scope, max_rank, timings);
    let mut w = open_out(out).map_err(io_usage)?;
    match format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut w, &report).map_err(|e| io_usage(e.into()))?;
            w.write_all(b"\n").map_err(io_usage)?;
        }
        Format::Table | Format::Csv => {
            let cols = ["check", "scope", "passed", "checked", "failures"];
            let cells: Vec<Vec<String>> = report
                .checks
                .iter()
                .map(|c| {
                    vec![c.name.clone(), c.scope.clone(), c.passed.to_string(), c.checked.to_string(), c.failure_count.to_string()]
                })
                .collect();
            if format == Format::Csv {
                let mut cw = csv::Writer::from_writer(&mut w);
                cw.write_record(cols).map_err(|e| io_usage(e.into()))?;
                for row in &cells {
                    cw.write_record(row).map_err(|e| io_usage(e.into()))?;
                }
                cw.flush().map_err(io_usage)?;
            } else {
                w.write_all(emit::table(&cols, &cells).as_bytes()).map_err(io_usage)?;
                for c in report.checks.iter().filter(|c| !c.passed) {
                    writeln!(w, "\n{} ({} failures):", c.name, c.failure_count).map_err(io_usage)?;
                    for f in &c.failures {
                        writeln!(w, "  {f}").map_err(io_usage)?;
                    }
                }
                writeln!(w, "\n{} literal-mode discrepancies (informational)", report.discrepancies.len())
                    .map_err(io_usage)?;
                if let Some(ts) = &report.timings {
                    for t in ts {
                        writeln!(w, "{:<24}{:>8} ms", t.check, t.millis).map_err(io_usage)?;
                    }
                }
            }
        }
    }
    w.flush().map_err(io_usage)?;
    Ok(if report.passed { EXIT_OK } else { EXIT_FAILED })
}

/// Runs a parsed command and returns the process exit code.
pub fn run(cli: Cli) -> i32 {
    let result = match &cli.command {
        Command::Classify { kind, q } => {
            let k = match kind {
                ClassifyKind::Sharp => Kind::Sharp,
                ClassifyKind::StrictlySharp => Kind::StrictlySharp,
                ClassifyKind::Blunt => Kind::Blunt,
                ClassifyKind::StrictlyBlunt => Kind::StrictlyBlunt,
            };
            query(k, q)
        }
        Command::Bijection { q } => query(Kind::Bijection, q),
        Command::Theta { q } => query(Kind::Theta, q),
        Command::Verify { scope, max_rank, format, timings, out } => {
            verify_cmd((*scope).into(), *max_rank, (*format).into(), *timings, out)
        }
        Command::Explain { out } => open_out(out)
            .and_then(|mut w| {
                w.write_all(explain::LEDGER.as_bytes())?;
                w.flush()
            })
            .map(|_| EXIT_OK)
            .map_err(io_usage),
    };
    match result {
        Ok(code) => code,
        Err(BuildError::Usage(e)) => {
            eprintln!("error: {e}");
            EXIT_USAGE
        }
        Err(BuildError::Compute(e)) => {
            eprintln!("error: {e}");
            EXIT_FAILED
        }
    }
}
