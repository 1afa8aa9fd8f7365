use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use pointplane::{
    all_lines, check_all_axioms, check_theorems, check_vy_axioms, generate_pg3_bounded,
    line_census, parse_structure, search_independence, serialize_structure, CheckOptions, Elem,
    Error, IncidenceStructure, SearchConfig, Witness,
};

#[derive(Parser)]
#[command(
    name = "pointplane",
    version,
    about = "Check point/plane incidence structures against the axioms of projective three-space"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a model structure.
    Generate {
        #[command(subcommand)]
        model: Model,
    },
    /// Check axioms, theorems, or Veblen–Young items.
    Check(CheckArgs),
    /// List the derived lines.
    Lines {
        #[arg(long = "in")]
        input: Option<PathBuf>,
        #[arg(long)]
        counts_only: bool,
    },
    /// Write the dual (transposed) structure.
    Dual {
        #[arg(long = "in")]
        input: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Search for a structure violating exactly one axiom group.
    Search {
        #[arg(long)]
        drop: u8,
        #[arg(long)]
        max_points: usize,
        #[arg(long)]
        max_planes: usize,
        #[arg(long)]
        budget: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Also write a found witness to this file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum Model {
    /// PG(3,q) over the prime field of order q.
    Pg3 {
        #[arg(long)]
        q: u32,
        #[arg(long, default_value_t = pointplane::pg::DEFAULT_MAX_Q)]
        max_q: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    Axioms,
    Theorems,
    Vy,
    All,
}

#[derive(Args)]
struct CheckArgs {
    suite: Suite,
    #[arg(long = "in")]
    input: Option<PathBuf>,
    /// Run theorem checks even if the axioms fail.
    #[arg(long)]
    force: bool,
    /// Check this many random instances per statement instead of all.
    #[arg(long)]
    sample: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = pointplane::quantify::DEFAULT_MAX_ELEMENTS)]
    max_elements: usize,
}

/// Outcome of a command that ran to completion.
enum Outcome {
    Pass,
    Fail,
}

fn read_input(path: Option<&Path>) -> Result<String> {
    match path {
        Some(p) => fs::read_to_string(p).with_context(|| format!("reading {}", p.display())),
        None => {
            let mut buf = String::new();
            io::stdin()
                .read_to_string(&mut buf)
                .context("reading standard input")?;
            Ok(buf)
        }
    }
}

fn load(path: Option<&Path>) -> Result<IncidenceStructure> {
    let text = read_input(path)?;
    let source = path.map_or("<stdin>".to_string(), |p| p.display().to_string());
    parse_structure(&text).with_context(|| format!("parsing {source}"))
}

fn write_output(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => io::stdout()
            .write_all(text.as_bytes())
            .context("writing standard output"),
    }
}

fn set_list(elems: impl Iterator<Item = Elem>) -> String {
    Witness::new(elems).to_string()
}

fn run_check(args: &CheckArgs, out: &mut impl Write) -> Result<Outcome> {
    let s = load(args.input.as_deref())?;
    let opts = CheckOptions {
        force: args.force,
        sample: args.sample,
        seed: args.seed,
        max_elements: args.max_elements,
    };
    let mut all_pass = true;

    if matches!(args.suite, Suite::Axioms | Suite::All) {
        let summary = check_all_axioms(&s, &opts)?;
        for r in &summary.reports {
            writeln!(out, "{r}")?;
        }
        for note in &summary.notes {
            writeln!(out, "NOTE {note}")?;
        }
        all_pass &= summary.all_pass();
        if args.suite == Suite::Axioms {
            return Ok(if all_pass {
                Outcome::Pass
            } else {
                Outcome::Fail
            });
        }
        if !all_pass && !opts.force {
            eprintln!("theorem checks skipped: axioms fail (rerun with --force)");
            return Ok(Outcome::Fail);
        }
    }

    // the axioms were either just checked or are checked inside the calls below
    let theorem_opts = if args.suite == Suite::All {
        opts.forced()
    } else {
        opts
    };
    let mut reports = Vec::new();
    if matches!(args.suite, Suite::Theorems | Suite::All) {
        reports.extend(check_theorems(&s, &theorem_opts)?);
    }
    if matches!(args.suite, Suite::Vy | Suite::All) {
        reports.extend(check_vy_axioms(&s, &theorem_opts)?);
    }
    for r in &reports {
        writeln!(out, "{r}")?;
        all_pass &= r.pass;
    }
    Ok(if all_pass {
        Outcome::Pass
    } else {
        Outcome::Fail
    })
}

fn run_lines(input: Option<&Path>, counts_only: bool, out: &mut impl Write) -> Result<Outcome> {
    let s = load(input)?;
    let lines = all_lines(&s)?;
    let census = line_census(&lines);
    writeln!(out, "lines {}", census.lines)?;
    writeln!(
        out,
        "points_per_line min={} max={}",
        census.min_points, census.max_points
    )?;
    writeln!(
        out,
        "planes_per_line min={} max={}",
        census.min_planes, census.max_planes
    )?;
    if !counts_only {
        for (i, line) in lines.iter().enumerate() {
            writeln!(
                out,
                "line {i} points={} planes={}",
                set_list(line.point_pencil().iter().map(Elem::of)),
                set_list(line.plane_pencil().iter().map(Elem::of)),
            )?;
        }
    }
    Ok(Outcome::Pass)
}

fn run(cli: Cli) -> Result<Outcome> {
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match cli.command {
        Command::Generate {
            model:
                Model::Pg3 {
                    q,
                    max_q,
                    out: path,
                },
        } => {
            let s = generate_pg3_bounded(q, max_q)?;
            write_output(path.as_deref(), &serialize_structure(&s))?;
            Ok(Outcome::Pass)
        }
        Command::Check(args) => run_check(&args, &mut out),
        Command::Lines { input, counts_only } => run_lines(input.as_deref(), counts_only, &mut out),
        Command::Dual { input, out: path } => {
            let s = load(input.as_deref())?;
            write_output(path.as_deref(), &serialize_structure(&s.dualize()))?;
            Ok(Outcome::Pass)
        }
        Command::Search {
            drop,
            max_points,
            max_planes,
            budget,
            seed,
            out: path,
        } => {
            let cfg = SearchConfig {
                dropped_axiom: drop,
                max_points,
                max_planes,
                budget,
                seed,
            };
            let report = search_independence(&cfg)?;
            write!(out, "{report}")?;
            if let (Some(path), Some(s)) = (path, &report.witness) {
                write_output(Some(&path), &serialize_structure(s))?;
            }
            Ok(Outcome::Pass)
        }
    }
}

/// Failures that mean "a check failed" rather than bad input.
fn is_check_failure(err: &anyhow::Error) -> bool {
    matches!(
        err.downcast_ref::<Error>(),
        Some(
            Error::AxiomsFailed { .. } | Error::MalformedLine { .. } | Error::MeetViolation { .. }
        )
    )
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Outcome::Pass) => ExitCode::SUCCESS,
        Ok(Outcome::Fail) => ExitCode::from(1),
        Err(err) => {
            eprintln!("error: {err:#}");
            if is_check_failure(&err) {
                ExitCode::from(1)
            } else {
                ExitCode::from(2)
            }
        }
    }
}
