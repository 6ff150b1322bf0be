use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use partition_heaps::trace::{gen, Pattern, Trace};
use partition_heaps::{HeapKind, SelectMode};
use pheap_bench::{
    build_report, compare, read_costs, render_text, run_trace, write_costs, RunOptions,
};

#[derive(Parser)]
#[command(
    name = "pheap",
    about = "Partition heap workloads, replay and cost reports"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Generate a trace.
    Gen {
        /// random, sorted, reverse, dijkstra-like, sawtooth or adversarial-dk
        pattern: Pattern,
        #[arg(long, default_value_t = 10_000)]
        ops: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output file (stdout when omitted).
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Replay a trace on one implementation and write its costs file.
    Run {
        trace: PathBuf,
        #[arg(long = "impl", default_value = "lp")]
        kind: HeapKind,
        /// Costs file (default: `<trace>.<impl>.csv`).
        #[arg(long)]
        costs: Option<PathBuf>,
        #[command(flatten)]
        flags: Flags,
    },
    /// Replay a trace on several implementations and compare their outputs.
    Compare {
        trace: PathBuf,
        #[arg(long = "impl", value_delimiter = ',', default_values = ["lp", "fhtng", "exp"])]
        kinds: Vec<HeapKind>,
        #[command(flatten)]
        flags: Flags,
    },
    /// Summarize costs files.
    Report {
        #[arg(required = true)]
        files: Vec<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Args, Clone, Copy)]
struct Flags {
    /// Seed of the randomized selection.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Full audit after every N operations.
    #[arg(long)]
    audit_every: Option<usize>,
    /// Compare every result against the reference heap.
    #[arg(long)]
    oracle: bool,
    /// Track potentials and check every ledger row.
    #[arg(long)]
    phi: bool,
    #[arg(long, value_enum, default_value_t = Select::Det)]
    select: Select,
}

#[derive(ValueEnum, Clone, Copy)]
enum Select {
    Det,
    Rand,
}

#[derive(ValueEnum, Clone, Copy)]
enum Format {
    Text,
    Json,
}

impl Flags {
    fn options(self) -> RunOptions {
        RunOptions {
            select: match self.select {
                Select::Det => SelectMode::Deterministic,
                Select::Rand => SelectMode::Randomized { seed: self.seed },
            },
            audit_every: self.audit_every,
            oracle: self.oracle,
            phi: self.phi,
        }
    }
}

fn load_trace(path: &Path) -> Result<Trace> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    text.parse()
        .with_context(|| format!("parsing {}", path.display()))
}

fn default_costs_path(trace: &Path, kind: HeapKind) -> PathBuf {
    let mut name = trace.file_name().unwrap_or_default().to_os_string();
    name.push(format!(".{kind}.csv"));
    trace.with_file_name(name)
}

fn main() -> ExitCode {
    match dispatch(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

/// Returns whether every check passed.
fn dispatch(cli: Cli) -> Result<bool> {
    match cli.cmd {
        Cmd::Gen {
            pattern,
            ops,
            seed,
            out,
        } => {
            let text = gen(pattern, ops, seed).to_string();
            match out {
                Some(p) => {
                    fs::write(&p, text).with_context(|| format!("writing {}", p.display()))?
                }
                None => io::stdout().write_all(text.as_bytes())?,
            }
            Ok(true)
        }
        Cmd::Run {
            trace,
            kind,
            costs,
            flags,
        } => {
            let t = load_trace(&trace)?;
            let out = run_trace(&t, kind, flags.options());
            let path = costs.unwrap_or_else(|| default_costs_path(&trace, kind));
            let file =
                fs::File::create(&path).with_context(|| format!("creating {}", path.display()))?;
            write_costs(io::BufWriter::new(file), &out.rows)?;
            println!("{}", out.verdict);
            if flags.phi {
                println!("ledger rows checked: {}", out.verdict.ledger_rows_checked);
            }
            Ok(out.verdict.passed())
        }
        Cmd::Compare {
            trace,
            kinds,
            flags,
        } => {
            let t = load_trace(&trace)?;
            let out = compare(&t, &kinds, flags.options());
            println!(
                "{:<8} {:>8} {:>14} {:>12} {:>8}",
                "impl", "ops", "comparisons", "touches", "result"
            );
            for (kind, run) in &out.runs {
                let cmp: u64 = run.rows.iter().map(|r| r.comparisons).sum();
                let touches: u64 = run.rows.iter().map(|r| r.touches()).sum();
                let result = if run.verdict.passed() { "pass" } else { "FAIL" };
                println!(
                    "{:<8} {:>8} {:>14} {:>12} {:>8}",
                    kind.name(),
                    run.verdict.ops,
                    cmp,
                    touches,
                    result
                );
                if let Some(f) = &run.verdict.failure {
                    println!("  {f}");
                }
            }
            if let Some((kind, pos)) = out.mismatch {
                println!("delete_min sequence of {kind} differs at output {pos}");
            }
            Ok(out.passed())
        }
        Cmd::Report { files, format } => {
            let mut loaded = Vec::new();
            for p in &files {
                let f = fs::File::open(p).with_context(|| format!("opening {}", p.display()))?;
                let rows = read_costs(f).with_context(|| format!("reading {}", p.display()))?;
                loaded.push((p.display().to_string(), rows));
            }
            let report = build_report(&loaded);
            match format {
                Format::Text => print!("{}", render_text(&report)),
                Format::Json => println!("{}", serde_json::to_string_pretty(&report)?),
            }
            Ok(true)
        }
    }
}
