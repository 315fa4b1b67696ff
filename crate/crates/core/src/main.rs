use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand};

use recsmsp::analysis::{ratio_curve, write_ratio_csv};
use recsmsp::exact::{ExactConfig, DEFAULT_SUBSET_BUDGET};
use recsmsp::harness::{
    gen_named, run_experiment, solve, summarize, write_records_csv, write_summary_csv, Algo,
    Deltas, GenConfig, RunConfig,
};
use recsmsp::mipio::{write_lp, ModelSpec};
use recsmsp::Instance;

#[derive(Parser)]
#[command(
    name = "recsmsp",
    version,
    about = "Two-stage single machine scheduling with an intersection requirement"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Generate seeded random instances.
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        count: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 1)]
        low: u64,
        #[arg(long, default_value_t = 100)]
        high: u64,
    },
    /// Solve every instance in a file.
    Solve {
        #[arg(long)]
        algo: Algo,
        #[arg(long)]
        delta: usize,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, default_value_t = DEFAULT_SUBSET_BUDGET)]
        budget: u128,
    },
    /// Run a batch of solvers over generated instances and write CSV records.
    Bench {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        count: usize,
        #[arg(long)]
        seed: u64,
        /// `all` or a comma-separated list.
        #[arg(long, default_value = "all")]
        deltas: Deltas,
        /// Comma-separated algorithm names.
        #[arg(long, value_delimiter = ',', default_value = "lb,ub,greedy,exact")]
        algos: Vec<Algo>,
        #[arg(long)]
        out: PathBuf,
        /// Gap statistics of ub and greedy against exact.
        #[arg(long)]
        summary: Option<PathBuf>,
        #[arg(long)]
        workers: Option<usize>,
        /// Record wall-clock times (otherwise written as 0).
        #[arg(long)]
        timing: bool,
        #[arg(long, default_value_t = DEFAULT_SUBSET_BUDGET)]
        budget: u128,
    },
    /// Write the assignment model of one instance in LP format.
    ExportMip {
        #[arg(long)]
        delta: usize,
        #[arg(long)]
        relaxed: bool,
        #[arg(long = "in")]
        input: PathBuf,
        /// Defaults to standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write bound ratios of the fully-crossed 0-1 instances.
    Ratios {
        #[arg(long)]
        n_max: usize,
        #[arg(long)]
        out: PathBuf,
    },
}

fn read_instances(path: &Path) -> anyhow::Result<Vec<Instance>> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let all = Instance::parse_many(&text).with_context(|| format!("parsing {}", path.display()))?;
    if all.is_empty() {
        bail!("{}: no instances found", path.display());
    }
    Ok(all)
}

fn create(path: &Path) -> anyhow::Result<io::BufWriter<fs::File>> {
    let f = fs::File::create(path).with_context(|| format!("creating {}", path.display()))?;
    Ok(io::BufWriter::new(f))
}

fn run(cli: Cli) -> anyhow::Result<()> {
    match cli.cmd {
        Cmd::Gen {
            n,
            count,
            seed,
            out,
            low,
            high,
        } => {
            let cfg = GenConfig {
                n,
                count,
                seed,
                low,
                high,
            };
            let mut w = create(&out)?;
            for ni in gen_named(&cfg)? {
                w.write_all(ni.inst.to_text().as_bytes())?;
            }
            w.flush()?;
        }
        Cmd::Solve {
            algo,
            delta,
            input,
            budget,
        } => {
            let cfg = ExactConfig {
                budget,
                ..ExactConfig::default()
            };
            let stdout = io::stdout();
            let mut w = stdout.lock();
            for (k, inst) in read_instances(&input)?.iter().enumerate() {
                let r = solve(algo, inst, delta, &cfg)
                    .with_context(|| format!("instance {}", k + 1))?;
                writeln!(w, "instance {}", k + 1)?;
                writeln!(w, "value {}", r.value)?;
                writeln!(w, "fixed {:?}", r.fixed.one_based())?;
                writeln!(w, "first {}", r.pair.first)?;
                writeln!(w, "second {}", r.pair.second)?;
                writeln!(w, "intersection {}", r.pair.intersection())?;
                writeln!(w, "evaluations {}", r.stats.evaluations)?;
            }
        }
        Cmd::Bench {
            n,
            count,
            seed,
            deltas,
            algos,
            out,
            summary,
            workers,
            timing,
            budget,
        } => {
            let instances = gen_named(&GenConfig::new(n, count, seed))?;
            let cfg = RunConfig {
                workers,
                timing,
                exact: ExactConfig {
                    budget,
                    ..ExactConfig::default()
                },
            };
            let res = run_experiment(&instances, &deltas, &algos, &cfg)?;
            write_records_csv(&res.records, create(&out)?)?;
            if let Some(path) = summary {
                write_summary_csv(&summarize(&res.records), create(&path)?)?;
            }
            for e in &res.errors {
                eprintln!("skipped: {e}");
            }
        }
        Cmd::ExportMip {
            delta,
            relaxed,
            input,
            out,
        } => {
            let mut all = read_instances(&input)?;
            if all.len() != 1 {
                bail!(
                    "{}: expected one instance, found {}",
                    input.display(),
                    all.len()
                );
            }
            let text = write_lp(&ModelSpec::new(all.remove(0), delta, relaxed)?);
            match out {
                Some(path) => {
                    fs::write(&path, text).with_context(|| format!("writing {}", path.display()))?
                }
                None => io::stdout().write_all(text.as_bytes())?,
            }
        }
        Cmd::Ratios { n_max, out } => {
            write_ratio_csv(&ratio_curve(n_max)?, create(&out)?)?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
