//! `squarewatch`: analyse squares of regular graphs from the command line.
//!
//! Exit status is 0 when every graph passes or is an exception, 1 when any
//! graph yields a violation, and 2 on usage, input or parse errors.

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use squarewatch_core::families::{
    make_a_tail_graph, make_b_tail_graph, make_multitail_graph, make_peanut, make_snake, random_regular,
};
use squarewatch_core::format::{emit_adjacency, emit_graph6, parse_stream};
use squarewatch_core::verify::{analyze, lemma_suite, render_batch, run_batch, Status};
use squarewatch_core::Graph;

#[derive(Parser)]
#[command(
    name = "squarewatch",
    version,
    about = "Structure checks for squares of regular graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Full report for every graph in a file.
    Analyze {
        file: PathBuf,
        #[arg(long)]
        no_timing: bool,
    },
    /// Reports for a stream of graphs, followed by a summary line.
    Batch {
        /// Input file, or `-` for standard input.
        file: PathBuf,
        #[arg(long)]
        jobs: Option<usize>,
        #[arg(long)]
        no_timing: bool,
    },
    /// Writes one member of a named family.
    Generate {
        #[command(subcommand)]
        family: Family,
        #[arg(long, global = true)]
        out: Option<PathBuf>,
        #[arg(long, global = true, value_enum, default_value_t = OutputFormat::G6)]
        format: OutputFormat,
    },
    /// Lemma verdicts for every graph in a file.
    Lemmas { file: PathBuf },
    /// Seeded random regular graphs, one per line.
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        #[arg(long, default_value_t = 1)]
        count: usize,
        #[arg(long, env = "SQUAREWATCH_SEED", default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = OutputFormat::G6)]
        format: OutputFormat,
    },
}

#[derive(Subcommand)]
enum Family {
    Snake {
        #[arg(long)]
        d: usize,
        #[arg(long, default_value_t = 1)]
        ka: usize,
        #[arg(long, default_value_t = 1)]
        kb: usize,
    },
    Peanut {
        #[arg(long)]
        d: usize,
    },
    Atail {
        #[arg(long)]
        d: usize,
        #[arg(long, default_value_t = 1)]
        k: usize,
        #[arg(long, default_value_t = 0)]
        x_prime: usize,
    },
    Btail {
        #[arg(long)]
        d: usize,
        #[arg(long, default_value_t = 1)]
        k: usize,
        #[arg(long, default_value_t = 2)]
        x_prime: usize,
    },
    Multitail {
        #[arg(long)]
        d: usize,
        /// Segment count of each tail, comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        segments: Vec<usize>,
    },
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        #[arg(long, env = "SQUAREWATCH_SEED", default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputFormat {
    G6,
    Adj,
}

fn encode(g: &Graph, format: OutputFormat) -> String {
    match format {
        OutputFormat::G6 => emit_graph6(g) + "\n",
        OutputFormat::Adj => emit_adjacency(g),
    }
}

fn read_input(path: &Path) -> Result<String> {
    if path == Path::new("-") {
        let mut text = String::new();
        io::stdin()
            .read_to_string(&mut text)
            .context("reading standard input")?;
        Ok(text)
    } else {
        fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
    }
}

fn write_output(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => io::stdout()
            .write_all(text.as_bytes())
            .context("writing standard output"),
    }
}

/// Parses every graph in `path`, failing on the first malformed one.
fn load_graphs(path: &Path) -> Result<Vec<(String, Graph)>> {
    let items = parse_stream(&read_input(path)?);
    if items.is_empty() {
        bail!("{} contains no graphs", path.display());
    }
    items
        .into_iter()
        .map(|(id, g)| {
            g.map(|g| (id.clone(), g))
                .with_context(|| format!("{}: {id}", path.display()))
        })
        .collect()
}

fn generate(family: &Family) -> Result<Graph> {
    let g = match *family {
        Family::Snake { d, ka, kb } => make_snake(d, ka, kb)?.0,
        Family::Peanut { d } => make_peanut(d)?.0,
        Family::Atail { d, k, x_prime } => make_a_tail_graph(d, k, x_prime)?.0,
        Family::Btail { d, k, x_prime } => make_b_tail_graph(d, k, x_prime)?.0,
        Family::Multitail { d, ref segments } => make_multitail_graph(d, segments)?.0,
        Family::Random { n, d, seed } => random_regular(n, d, seed)?,
    };
    Ok(g)
}

fn run(cli: Cli) -> Result<ExitCode> {
    let violation = |v: bool| if v { ExitCode::from(1) } else { ExitCode::SUCCESS };
    match cli.command {
        Command::Analyze { file, no_timing } => {
            let mut any = false;
            let mut out = String::new();
            for (id, g) in load_graphs(&file)? {
                let report = analyze(&g, id, !no_timing);
                any |= report.status == Status::Violation;
                out.push_str(&serde_json::to_string(&report)?);
                out.push('\n');
            }
            write_output(None, &out)?;
            Ok(violation(any))
        }
        Command::Batch { file, jobs, no_timing } => {
            let inputs = parse_stream(&read_input(&file)?);
            let (items, summary) = run_batch(&inputs, jobs, !no_timing)?;
            write_output(None, &render_batch(&items, &summary)?)?;
            Ok(if summary.violation > 0 {
                ExitCode::from(1)
            } else if summary.parse_errors > 0 {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            })
        }
        Command::Generate { family, out, format } => {
            write_output(out.as_deref(), &encode(&generate(&family)?, format))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Lemmas { file } => {
            let mut any = false;
            let mut out = String::new();
            for (id, g) in load_graphs(&file)? {
                let checks = lemma_suite(&g).with_context(|| format!("{id} is outside the lemma domain"))?;
                any |= checks.iter().any(|c| c.failed());
                let line = serde_json::json!({ "id": id, "lemmas": checks });
                out.push_str(&line.to_string());
                out.push('\n');
            }
            write_output(None, &out)?;
            Ok(violation(any))
        }
        Command::Random {
            n,
            d,
            count,
            seed,
            out,
            format,
        } => {
            let mut text = String::new();
            for i in 0..count as u64 {
                text.push_str(&encode(&random_regular(n, d, seed.wrapping_add(i))?, format));
            }
            write_output(out.as_deref(), &text)?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("squarewatch: {e:#}");
            ExitCode::from(2)
        }
    }
}
