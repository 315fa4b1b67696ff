//! Domain types for the two-stage single-machine problem and the
//! position-weighted objective shared by every solver.
//!
//! Jobs and positions are stored 0-based. The weight of the slot at 0-based
//! position `s` in an `n`-job schedule is `n - s`, i.e. `n + 1 - i` for the
//! 1-based position `i`. Constructors taking 1-based job numbers are suffixed
//! `_one_based`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Largest processing time accepted by [`Duration::new`].
pub const MAX_DURATION: u64 = 1_000_000_000;

/// Largest job count accepted by [`Instance::new`]. Together with
/// [`MAX_DURATION`] this keeps every objective value inside `u64`.
pub const MAX_JOBS: usize = 10_000;

/// A non-negative integral processing time.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Duration(u64);

impl Duration {
    pub const ZERO: Duration = Duration(0);

    pub fn new(value: u64) -> Result<Self> {
        if value > MAX_DURATION {
            return Err(Error::DurationOutOfRange {
                value,
                max: MAX_DURATION,
            });
        }
        Ok(Duration(value))
    }

    #[inline]
    pub const fn get(self) -> u64 {
        self.0
    }
}

impl TryFrom<u64> for Duration {
    type Error = Error;

    fn try_from(value: u64) -> Result<Self> {
        Duration::new(value)
    }
}

impl fmt::Display for Duration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

fn durations_from(values: &[u64]) -> Result<Vec<Duration>> {
    values.iter().map(|&v| Duration::new(v)).collect()
}

/// A problem instance: `n` jobs with first-stage durations `p` and
/// (worst-case) second-stage durations `q`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Instance {
    p: Vec<Duration>,
    q: Vec<Duration>,
}

impl Instance {
    pub fn new(p: Vec<Duration>, q: Vec<Duration>) -> Result<Self> {
        if p.is_empty() {
            return Err(Error::EmptyInstance);
        }
        if p.len() > MAX_JOBS {
            return Err(Error::TooManyJobs {
                n: p.len(),
                max: MAX_JOBS,
            });
        }
        if q.len() != p.len() {
            return Err(Error::Dimension {
                expected: p.len(),
                found: q.len(),
            });
        }
        Ok(Instance { p, q })
    }

    /// Builds an instance from raw integers, validating each duration.
    pub fn from_values(p: &[u64], q: &[u64]) -> Result<Self> {
        Instance::new(durations_from(p)?, durations_from(q)?)
    }

    /// Job count.
    #[inline]
    pub fn n(&self) -> usize {
        self.p.len()
    }

    #[inline]
    pub fn p(&self) -> &[Duration] {
        &self.p
    }

    #[inline]
    pub fn q(&self) -> &[Duration] {
        &self.q
    }

    /// `(p_j, q_j)` for the 0-based job `j`.
    #[inline]
    pub fn job(&self, j: usize) -> (u64, u64) {
        (self.p[j].get(), self.q[j].get())
    }

    /// Combined duration `p_j + q_j` of the 0-based job `j`.
    #[inline]
    pub fn joint(&self, j: usize) -> u64 {
        self.p[j].get() + self.q[j].get()
    }

    /// Parses every instance in `text`. Instances are stored back to back in
    /// the three-line format written by [`Instance::to_text`]; blank lines
    /// are ignored.
    pub fn parse_many(text: &str) -> Result<Vec<Instance>> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty());
        let mut out = Vec::new();
        while let Some((line, header)) = lines.next() {
            let n: usize = header.parse().map_err(|_| Error::Parse {
                line,
                msg: format!("expected a job count, found {header:?}"),
            })?;
            let mut row = |what: &str| -> Result<Vec<u64>> {
                let (line, text) = lines.next().ok_or(Error::Parse {
                    line: line + 1,
                    msg: format!("missing {what} line"),
                })?;
                let values = text
                    .split_whitespace()
                    .map(|tok| {
                        tok.parse::<u64>().map_err(|_| Error::Parse {
                            line,
                            msg: format!("invalid duration {tok:?}"),
                        })
                    })
                    .collect::<Result<Vec<_>>>()?;
                if values.len() != n {
                    return Err(Error::Parse {
                        line,
                        msg: format!("expected {n} {what} values, found {}", values.len()),
                    });
                }
                Ok(values)
            };
            let p = row("p")?;
            let q = row("q")?;
            out.push(Instance::from_values(&p, &q).map_err(|e| Error::Parse {
                line,
                msg: e.to_string(),
            })?);
        }
        Ok(out)
    }

    /// Three-line text form: `n`, then the `p` row, then the `q` row.
    pub fn to_text(&self) -> String {
        fn row(values: &[Duration]) -> String {
            values
                .iter()
                .map(|d| d.to_string())
                .collect::<Vec<_>>()
                .join(" ")
        }
        format!("{}\n{}\n{}\n", self.n(), row(&self.p), row(&self.q))
    }
}

impl FromStr for Instance {
    type Err = Error;

    /// Parses exactly one instance.
    fn from_str(s: &str) -> Result<Self> {
        let mut all = Instance::parse_many(s)?;
        match all.len() {
            1 => Ok(all.pop().unwrap()),
            k => Err(Error::Parse {
                line: 1,
                msg: format!("expected exactly one instance, found {k}"),
            }),
        }
    }
}

impl fmt::Display for Instance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// An instance whose second-stage durations lie in the interval
/// `[q_hat - q_bar, q_hat + q_bar]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntervalInstance {
    p: Vec<Duration>,
    q_hat: Vec<Duration>,
    q_bar: Vec<Duration>,
}

impl IntervalInstance {
    pub fn new(p: Vec<Duration>, q_hat: Vec<Duration>, q_bar: Vec<Duration>) -> Result<Self> {
        for other in [&q_hat, &q_bar] {
            if other.len() != p.len() {
                return Err(Error::Dimension {
                    expected: p.len(),
                    found: other.len(),
                });
            }
        }
        Ok(IntervalInstance { p, q_hat, q_bar })
    }

    pub fn from_values(p: &[u64], q_hat: &[u64], q_bar: &[u64]) -> Result<Self> {
        IntervalInstance::new(
            durations_from(p)?,
            durations_from(q_hat)?,
            durations_from(q_bar)?,
        )
    }

    pub fn p(&self) -> &[Duration] {
        &self.p
    }

    pub fn q_hat(&self) -> &[Duration] {
        &self.q_hat
    }

    pub fn q_bar(&self) -> &[Duration] {
        &self.q_bar
    }
}

/// Reduces an interval instance to its worst-case scenario, where every job
/// takes `q_hat + q_bar` in the second stage.
pub fn worst_case(inst: &IntervalInstance) -> Result<Instance> {
    let q = inst
        .q_hat
        .iter()
        .zip(&inst.q_bar)
        .map(|(hat, bar)| Duration::new(hat.get() + bar.get()))
        .collect::<Result<Vec<_>>>()?;
    Instance::new(inst.p.clone(), q)
}

/// A schedule: `slots[s]` is the 0-based job processed at 0-based position `s`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation {
    slots: Vec<usize>,
}

impl Permutation {
    pub fn new(slots: Vec<usize>) -> Result<Self> {
        let n = slots.len();
        let mut seen = vec![false; n];
        for &j in &slots {
            if j >= n || std::mem::replace(&mut seen[j], true) {
                return Err(Error::NotAPermutation { n });
            }
        }
        Ok(Permutation { slots })
    }

    /// Builds a permutation from 1-based job numbers, as printed in schedules.
    pub fn from_one_based(jobs: &[usize]) -> Result<Self> {
        let n = jobs.len();
        let slots = jobs
            .iter()
            .map(|&j| j.checked_sub(1).ok_or(Error::NotAPermutation { n }))
            .collect::<Result<Vec<_>>>()?;
        Permutation::new(slots)
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            slots: (0..n).collect(),
        }
    }

    /// Wraps slots already known to form a bijection.
    pub(crate) fn from_slots_unchecked(slots: Vec<usize>) -> Self {
        debug_assert!(Permutation::new(slots.clone()).is_ok());
        Permutation { slots }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.slots.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.slots.is_empty()
    }

    #[inline]
    pub fn slots(&self) -> &[usize] {
        &self.slots
    }

    pub fn one_based(&self) -> Vec<usize> {
        self.slots.iter().map(|j| j + 1).collect()
    }

    /// Inverse map: `positions()[j]` is the 0-based position of job `j`.
    pub fn positions(&self) -> Vec<usize> {
        let mut pos = vec![0; self.slots.len()];
        for (s, &j) in self.slots.iter().enumerate() {
            pos[j] = s;
        }
        pos
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, j) in self.slots.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{}", j + 1)?;
        }
        Ok(())
    }
}

/// First- and second-stage schedules over the same job set.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SchedulePair {
    pub first: Permutation,
    pub second: Permutation,
}

impl SchedulePair {
    pub fn new(first: Permutation, second: Permutation) -> Result<Self> {
        if first.len() != second.len() {
            return Err(Error::Dimension {
                expected: first.len(),
                found: second.len(),
            });
        }
        Ok(SchedulePair { first, second })
    }

    pub fn n(&self) -> usize {
        self.first.len()
    }

    /// Number of positions holding the same job in both stages.
    pub fn intersection(&self) -> usize {
        self.first
            .slots
            .iter()
            .zip(&self.second.slots)
            .filter(|(a, b)| a == b)
            .count()
    }

    pub fn value(&self, inst: &Instance) -> Result<u64> {
        pair_value(self, inst)
    }
}

/// Position-weighted sum `sum_i (n + 1 - i) * durations[perm(i)]`, which is
/// the total completion time of the schedule.
pub fn objective(perm: &Permutation, durations: &[Duration]) -> Result<u64> {
    if perm.len() != durations.len() {
        return Err(Error::Dimension {
            expected: perm.len(),
            found: durations.len(),
        });
    }
    Ok(weighted_sum(perm.slots.iter().map(|&j| durations[j].get())))
}

/// `sum_s (n - s) * values[s]` over a sequence of length `n` in slot order.
pub(crate) fn weighted_sum<I>(values: I) -> u64
where
    I: IntoIterator<Item = u64>,
    I::IntoIter: ExactSizeIterator,
{
    let it = values.into_iter();
    let n = it.len() as u64;
    it.enumerate().map(|(s, v)| (n - s as u64) * v).sum()
}

/// Combined objective of both stages.
pub fn pair_value(pair: &SchedulePair, inst: &Instance) -> Result<u64> {
    if pair.first.len() != pair.second.len() {
        return Err(Error::Dimension {
            expected: pair.first.len(),
            found: pair.second.len(),
        });
    }
    Ok(objective(&pair.first, &inst.p)? + objective(&pair.second, &inst.q)?)
}

pub fn intersection(pair: &SchedulePair) -> Result<usize> {
    if pair.first.len() != pair.second.len() {
        return Err(Error::Dimension {
            expected: pair.first.len(),
            found: pair.second.len(),
        });
    }
    Ok(pair.intersection())
}

/// Shortest-processing-time order, ties broken by job index.
pub fn spt(durations: &[Duration]) -> Permutation {
    Permutation::from_slots_unchecked(sorted_by_key(durations.len(), |j| durations[j].get()))
}

/// Jobs `0..n` sorted by `(key(j), j)`.
pub(crate) fn sorted_by_key<F>(n: usize, key: F) -> Vec<usize>
where
    F: Fn(usize) -> u64,
{
    let mut jobs: Vec<usize> = (0..n).collect();
    jobs.sort_by_key(|&j| (key(j), j));
    jobs
}
