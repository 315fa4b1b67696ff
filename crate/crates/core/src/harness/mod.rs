//! Seeded instance generation, batch experiments and gap statistics.

mod experiment;
mod rng;
mod summary;

pub use experiment::{
    read_records_csv, run_experiment, solve, write_records_csv, Algo, Deltas, ExperimentOutput,
    ExperimentRecord, RecordError, RunConfig, RECORD_CSV_HEADER,
};
pub use rng::SplitMix64;
pub use summary::{gap_pct, summarize, write_summary_csv, GapSummary, SUMMARY_CSV_HEADER};

use crate::error::{Error, Result};
use crate::model::{Duration, Instance, MAX_DURATION};

/// Parameters for [`gen_random`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenConfig {
    pub n: usize,
    pub count: usize,
    pub seed: u64,
    pub low: u64,
    pub high: u64,
}

impl GenConfig {
    /// `count` instances of `n` jobs with durations drawn from `1..=100`.
    pub fn new(n: usize, count: usize, seed: u64) -> Self {
        GenConfig {
            n,
            count,
            seed,
            low: 1,
            high: 100,
        }
    }
}

/// An instance tagged with a stable identifier and the seed of its set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NamedInstance {
    pub id: String,
    pub seed: u64,
    pub inst: Instance,
}

/// Draws `count` instances from one SplitMix64 stream seeded with
/// `cfg.seed`. Each instance consumes `n` first-stage values followed by `n`
/// second-stage values, so a smaller `count` yields a prefix of a larger one.
pub fn gen_random(cfg: &GenConfig) -> Result<Vec<Instance>> {
    if cfg.n == 0 {
        return Err(Error::EmptyInstance);
    }
    if cfg.count == 0 {
        return Err(Error::Domain("instance count must be at least 1".into()));
    }
    if cfg.low > cfg.high {
        return Err(Error::Domain(format!(
            "empty duration range {}..={}",
            cfg.low, cfg.high
        )));
    }
    if cfg.high > MAX_DURATION {
        return Err(Error::DurationOutOfRange {
            value: cfg.high,
            max: MAX_DURATION,
        });
    }
    let mut rng = SplitMix64::new(cfg.seed);
    let mut draw = |k: usize| -> Vec<Duration> {
        (0..k)
            .map(|_| Duration::new(rng.uniform(cfg.low, cfg.high)).unwrap())
            .collect()
    };
    (0..cfg.count)
        .map(|_| {
            let p = draw(cfg.n);
            let q = draw(cfg.n);
            Instance::new(p, q)
        })
        .collect()
}

/// [`gen_random`] with identifiers `n<n>-s<seed>-<index>`; the index is
/// zero-padded so identifiers sort in generation order.
pub fn gen_named(cfg: &GenConfig) -> Result<Vec<NamedInstance>> {
    Ok(gen_random(cfg)?
        .into_iter()
        .enumerate()
        .map(|(k, inst)| NamedInstance {
            id: format!("n{}-s{}-{k:04}", cfg.n, cfg.seed),
            seed: cfg.seed,
            inst,
        })
        .collect())
}
