//! Optimal schedules when a given set of jobs must keep its position.
//!
//! For a fix set `M` the jobs of `M` are ordered by joint duration `p + q`,
//! while the free jobs are sorted independently by `p` (first stage) and by
//! `q` (second stage) and paired rank by rank. Merging the joint durations of
//! `M` with the rank sums of the free jobs and weighting the merged sequence
//! by `n, n-1, ..., 1` yields the optimum `f(M)`.

use crate::error::{Error, Result};
use crate::model::{weighted_sum, Instance, Permutation, SchedulePair};

/// Jobs forced to occupy identical positions in both stages. Stored sorted
/// and 0-based.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FixSet {
    jobs: Vec<usize>,
}

impl FixSet {
    pub fn new<I>(jobs: I, n: usize) -> Result<Self>
    where
        I: IntoIterator<Item = usize>,
    {
        let mut jobs: Vec<usize> = jobs.into_iter().collect();
        jobs.sort_unstable();
        for w in jobs.windows(2) {
            if w[0] == w[1] {
                return Err(Error::DuplicateJob { job: w[0] + 1 });
            }
        }
        if let Some(&last) = jobs.last() {
            if last >= n {
                return Err(Error::JobOutOfRange { job: last + 1, n });
            }
        }
        Ok(FixSet { jobs })
    }

    pub fn from_one_based(jobs: &[usize], n: usize) -> Result<Self> {
        let zero_based = jobs
            .iter()
            .map(|&j| j.checked_sub(1).ok_or(Error::JobOutOfRange { job: 0, n }))
            .collect::<Result<Vec<_>>>()?;
        FixSet::new(zero_based, n)
    }

    /// Wraps 0-based jobs already known to be strictly increasing and in range.
    pub(crate) fn from_sorted_unchecked(jobs: Vec<usize>) -> Self {
        debug_assert!(jobs.windows(2).all(|w| w[0] < w[1]));
        FixSet { jobs }
    }

    pub fn empty() -> Self {
        FixSet::default()
    }

    pub fn all(n: usize) -> Self {
        FixSet {
            jobs: (0..n).collect(),
        }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.jobs.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.jobs.is_empty()
    }

    #[inline]
    pub fn jobs(&self) -> &[usize] {
        &self.jobs
    }

    pub fn contains(&self, job: usize) -> bool {
        self.jobs.binary_search(&job).is_ok()
    }

    pub fn one_based(&self) -> Vec<usize> {
        self.jobs.iter().map(|j| j + 1).collect()
    }

    /// Copy of the set with `job` added (no-op if already present).
    pub fn with(&self, job: usize) -> FixSet {
        let mut jobs = self.jobs.clone();
        if let Err(at) = jobs.binary_search(&job) {
            jobs.insert(at, job);
        }
        FixSet { jobs }
    }

    fn check(&self, n: usize) -> Result<()> {
        match self.jobs.last() {
            Some(&last) if last >= n => Err(Error::JobOutOfRange { job: last + 1, n }),
            _ => Ok(()),
        }
    }
}

/// Result of evaluating a fix set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EvalResult {
    /// `f(M)`.
    pub value: u64,
    /// A schedule pair attaining `value` in which every job of `fixed`
    /// sits at the same position in both stages.
    pub pair: SchedulePair,
    pub fixed: FixSet,
    /// Per-slot combined durations in slot order; `value` is their
    /// position-weighted sum.
    pub merged: Vec<u64>,
}

#[derive(Clone, Copy)]
enum Entry {
    /// `r`-th rank sum of the free jobs.
    Free(usize),
    Fixed(usize),
}

struct Merge {
    merged: Vec<u64>,
    entries: Vec<Entry>,
    by_p: Vec<usize>,
    by_q: Vec<usize>,
}

fn merge(inst: &Instance, fixed: &FixSet) -> Merge {
    let n = inst.n();
    let mut in_fixed = vec![false; n];
    for &j in fixed.jobs() {
        in_fixed[j] = true;
    }
    let free: Vec<usize> = (0..n).filter(|&j| !in_fixed[j]).collect();

    let mut by_p = free.clone();
    by_p.sort_by_key(|&j| (inst.p()[j], j));
    let mut by_q = free;
    by_q.sort_by_key(|&j| (inst.q()[j], j));
    let rank_sums: Vec<u64> = by_p
        .iter()
        .zip(&by_q)
        .map(|(&a, &b)| inst.p()[a].get() + inst.q()[b].get())
        .collect();

    let mut joint = fixed.jobs().to_vec();
    joint.sort_by_key(|&j| (inst.joint(j), j));

    // Two-way merge; on equal values the free entry goes first.
    let mut merged = Vec::with_capacity(n);
    let mut entries = Vec::with_capacity(n);
    let (mut r, mut k) = (0, 0);
    while r < rank_sums.len() || k < joint.len() {
        let take_free = match (rank_sums.get(r), joint.get(k)) {
            (Some(&d), Some(&j)) => d <= inst.joint(j),
            (Some(_), None) => true,
            _ => false,
        };
        if take_free {
            merged.push(rank_sums[r]);
            entries.push(Entry::Free(r));
            r += 1;
        } else {
            let j = joint[k];
            merged.push(inst.joint(j));
            entries.push(Entry::Fixed(j));
            k += 1;
        }
    }
    Merge {
        merged,
        entries,
        by_p,
        by_q,
    }
}

/// Computes `f(M)` together with a schedule pair attaining it.
pub fn eval_fixed(inst: &Instance, fixed: &FixSet) -> Result<EvalResult> {
    fixed.check(inst.n())?;
    let m = merge(inst, fixed);
    let value = weighted_sum(m.merged.iter().copied());

    let (first, second): (Vec<usize>, Vec<usize>) = m
        .entries
        .iter()
        .map(|e| match *e {
            Entry::Free(r) => (m.by_p[r], m.by_q[r]),
            Entry::Fixed(j) => (j, j),
        })
        .unzip();
    let pair = SchedulePair {
        first: Permutation::from_slots_unchecked(first),
        second: Permutation::from_slots_unchecked(second),
    };
    Ok(EvalResult {
        value,
        pair,
        fixed: fixed.clone(),
        merged: m.merged,
    })
}

/// `f(M)` without reconstructing schedules.
pub fn f_value(inst: &Instance, fixed: &FixSet) -> Result<u64> {
    fixed.check(inst.n())?;
    let n = inst.n();
    let mut in_fixed = vec![false; n];
    for &j in fixed.jobs() {
        in_fixed[j] = true;
    }
    let mut a: Vec<u64> = Vec::with_capacity(n - fixed.len());
    let mut b: Vec<u64> = Vec::with_capacity(n - fixed.len());
    let mut merged: Vec<u64> = Vec::with_capacity(n);
    for (j, &shared) in in_fixed.iter().enumerate() {
        let (p, q) = inst.job(j);
        if shared {
            merged.push(p + q);
        } else {
            a.push(p);
            b.push(q);
        }
    }
    a.sort_unstable();
    b.sort_unstable();
    merged.extend(a.iter().zip(&b).map(|(x, y)| x + y));
    merged.sort_unstable();
    Ok(weighted_sum(merged))
}
