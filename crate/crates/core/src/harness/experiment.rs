use std::fmt;
use std::io::{Read, Write};
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::NamedInstance;
use crate::approx::{greedy, lower_bound, upper_bound, SolveResult};
use crate::error::{Error, Result};
use crate::exact::{exact_enum_with, oracle, ExactConfig};
use crate::model::Instance;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Algo {
    Lb,
    Ub,
    Greedy,
    Exact,
    Oracle,
}

impl Algo {
    pub const ALL: [Algo; 5] = [Algo::Lb, Algo::Ub, Algo::Greedy, Algo::Exact, Algo::Oracle];

    pub fn name(self) -> &'static str {
        match self {
            Algo::Lb => "lb",
            Algo::Ub => "ub",
            Algo::Greedy => "greedy",
            Algo::Exact => "exact",
            Algo::Oracle => "oracle",
        }
    }
}

impl fmt::Display for Algo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algo {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Algo::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| Error::Domain(format!("unknown algorithm {s:?}")))
    }
}

/// Runs one algorithm. `lb` returns the unconstrained optimum, which may
/// violate the intersection requirement.
pub fn solve(
    algo: Algo,
    inst: &Instance,
    delta: usize,
    exact: &ExactConfig,
) -> Result<SolveResult> {
    if delta > inst.n() {
        return Err(Error::DeltaOutOfRange { delta, n: inst.n() });
    }
    match algo {
        Algo::Lb => Ok(lower_bound(inst)),
        Algo::Ub => Ok(upper_bound(inst)),
        Algo::Greedy => greedy(inst, delta),
        Algo::Exact => exact_enum_with(inst, delta, exact),
        Algo::Oracle => oracle(inst, delta),
    }
}

/// Which intersection requirements to run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Deltas {
    /// `0..=n` for each instance.
    All,
    List(Vec<usize>),
}

impl Deltas {
    fn for_n(&self, n: usize) -> Vec<usize> {
        match self {
            Deltas::All => (0..=n).collect(),
            Deltas::List(list) => {
                let mut v = list.clone();
                v.sort_unstable();
                v.dedup();
                v
            }
        }
    }
}

impl FromStr for Deltas {
    type Err = Error;

    /// `all`, or a comma-separated list such as `0,2,4`.
    fn from_str(s: &str) -> Result<Self> {
        if s == "all" {
            return Ok(Deltas::All);
        }
        s.split(',')
            .filter(|t| !t.trim().is_empty())
            .map(|t| {
                t.trim()
                    .parse()
                    .map_err(|_| Error::Domain(format!("invalid delta {t:?}")))
            })
            .collect::<Result<Vec<_>>>()
            .map(Deltas::List)
    }
}

#[derive(Debug, Clone, Default)]
pub struct RunConfig {
    /// Worker threads; `None` uses the global pool.
    pub workers: Option<usize>,
    /// Record wall-clock times. When off, `elapsed_ms` is written as zero so
    /// that repeated runs produce identical files.
    pub timing: bool,
    pub exact: ExactConfig,
}

/// One `(instance, delta, algorithm)` measurement; the CSV row layout.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentRecord {
    pub instance_id: String,
    pub n: usize,
    pub delta: usize,
    pub algo: Algo,
    pub value: u64,
    pub elapsed_ms: f64,
    pub evaluations: u64,
    pub seed: u64,
}

pub const RECORD_CSV_HEADER: &str = "instance_id,n,delta,algo,value,elapsed_ms,evaluations,seed";

#[derive(Debug, Clone, PartialEq)]
pub struct RecordError {
    pub instance_id: String,
    pub delta: usize,
    pub algo: Algo,
    pub error: Error,
}

impl fmt::Display for RecordError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} delta={} algo={}: {}",
            self.instance_id, self.delta, self.algo, self.error
        )
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct ExperimentOutput {
    /// Sorted by `(instance_id, delta, algo)`.
    pub records: Vec<ExperimentRecord>,
    /// Failed runs, in the same order. The remaining runs are unaffected.
    pub errors: Vec<RecordError>,
}

/// Runs every `(instance, delta, algorithm)` combination on a worker pool.
/// The output order and all values except timings are independent of the
/// number of workers.
pub fn run_experiment(
    instances: &[NamedInstance],
    deltas: &Deltas,
    algos: &[Algo],
    cfg: &RunConfig,
) -> Result<ExperimentOutput> {
    let mut algos = algos.to_vec();
    algos.sort_unstable();
    algos.dedup();
    let tasks: Vec<(&NamedInstance, usize, Algo)> = instances
        .iter()
        .flat_map(|ni| {
            let algos = &algos;
            deltas
                .for_n(ni.inst.n())
                .into_iter()
                .flat_map(move |d| algos.iter().map(move |&a| (ni, d, a)))
        })
        .collect();

    let run = |&(ni, delta, algo): &(&NamedInstance, usize, Algo)| {
        solve(algo, &ni.inst, delta, &cfg.exact)
            .map(|r| ExperimentRecord {
                instance_id: ni.id.clone(),
                n: ni.inst.n(),
                delta,
                algo,
                value: r.value,
                elapsed_ms: if cfg.timing {
                    r.stats.elapsed.as_secs_f64() * 1e3
                } else {
                    0.0
                },
                evaluations: r.stats.evaluations,
                seed: ni.seed,
            })
            .map_err(|error| RecordError {
                instance_id: ni.id.clone(),
                delta,
                algo,
                error,
            })
    };

    let results: Vec<_> = match cfg.workers {
        Some(k) => rayon::ThreadPoolBuilder::new()
            .num_threads(k.max(1))
            .build()
            .map_err(|e| Error::Domain(format!("cannot start worker pool: {e}")))?
            .install(|| tasks.par_iter().map(run).collect()),
        None => tasks.par_iter().map(run).collect(),
    };

    let mut out = ExperimentOutput::default();
    for r in results {
        match r {
            Ok(rec) => out.records.push(rec),
            Err(e) => out.errors.push(e),
        }
    }
    out.records
        .sort_by(|a, b| (&a.instance_id, a.delta, a.algo).cmp(&(&b.instance_id, b.delta, b.algo)));
    out.errors
        .sort_by(|a, b| (&a.instance_id, a.delta, a.algo).cmp(&(&b.instance_id, b.delta, b.algo)));
    Ok(out)
}

/// Writes records with a header row and LF line endings.
pub fn write_records_csv<W: Write>(records: &[ExperimentRecord], out: W) -> csv::Result<()> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out);
    for r in records {
        w.serialize(r)?;
    }
    if records.is_empty() {
        w.write_record(RECORD_CSV_HEADER.split(','))?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_records_csv<R: Read>(input: R) -> csv::Result<Vec<ExperimentRecord>> {
    csv::Reader::from_reader(input).deserialize().collect()
}
