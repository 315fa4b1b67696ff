//! Exact solvers.
//!
//! The optimum equals `min { f(M) : |M| = delta }` because `f` is monotone in
//! `M`. [`exact_enum`] enumerates those fix sets depth-first with bound
//! pruning, [`exact_bounded`] exploits instances with few distinct job types,
//! and [`oracle`] enumerates permutation pairs directly for tiny instances.

use std::collections::HashMap;
use std::sync::atomic::{AtomicU64, Ordering};
use std::time::Instant;

use rayon::prelude::*;

use crate::approx::{check_delta, greedy, SolveResult, SolveStats};
use crate::error::{Error, Result};
use crate::model::{weighted_sum, Instance, Permutation, SchedulePair};
use crate::recfix::{eval_fixed, f_value, FixSet};

/// Default limit on the number of fix sets an exact solver may enumerate.
pub const DEFAULT_SUBSET_BUDGET: u128 = 10_000_000;

/// Largest instance accepted by [`oracle`].
pub const ORACLE_MAX_JOBS: usize = 7;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExactConfig {
    /// Refuse to run when the search space holds more fix sets than this.
    pub budget: u128,
    /// Cut partial fix sets whose value already reaches the incumbent, and
    /// seed the incumbent with the greedy solution.
    pub prune: bool,
}

impl Default for ExactConfig {
    fn default() -> Self {
        ExactConfig {
            budget: DEFAULT_SUBSET_BUDGET,
            prune: true,
        }
    }
}

/// `C(n, k)`, saturating at `u128::MAX`.
pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k) as u128;
    let n = n as u128;
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) / (i + 1) stays integral at every step
        match acc.checked_mul(n - i) {
            Some(v) => acc = v / (i + 1),
            None => return u128::MAX,
        }
    }
    acc
}

fn check_budget(required: u128, budget: u128) -> Result<()> {
    if required > budget {
        return Err(Error::BudgetExceeded { required, budget });
    }
    Ok(())
}

struct Search<'a> {
    inst: &'a Instance,
    delta: usize,
    prune: bool,
    incumbent: &'a AtomicU64,
    chosen: Vec<usize>,
    best: Option<(u64, Vec<usize>)>,
    stats: SolveStats,
}

impl<'a> Search<'a> {
    fn new(inst: &'a Instance, delta: usize, prune: bool, incumbent: &'a AtomicU64) -> Self {
        Search {
            inst,
            delta,
            prune,
            incumbent,
            chosen: Vec::with_capacity(delta),
            best: None,
            stats: SolveStats::default(),
        }
    }

    /// Explores every completion of `chosen` using jobs `>= next`.
    fn run(&mut self, next: usize) {
        self.stats.nodes += 1;
        self.stats.evaluations += 1;
        let fixed = FixSet::from_sorted_unchecked(self.chosen.clone());
        let value = f_value(self.inst, &fixed).expect("enumerated jobs are in range");

        if self.prune && value >= self.incumbent.load(Ordering::Relaxed) {
            self.stats.pruned += 1;
            return;
        }
        if self.chosen.len() == self.delta {
            if self.best.as_ref().is_none_or(|(b, _)| value < *b) {
                self.best = Some((value, self.chosen.clone()));
                self.incumbent.fetch_min(value, Ordering::Relaxed);
            }
            return;
        }
        let last = self.inst.n() - (self.delta - self.chosen.len());
        for j in next..=last {
            self.chosen.push(j);
            self.run(j + 1);
            self.chosen.pop();
        }
    }
}

/// Optimal value by enumerating every fix set of size `delta`, with the
/// default budget and pruning enabled.
pub fn exact_enum(inst: &Instance, delta: usize) -> Result<SolveResult> {
    exact_enum_with(inst, delta, &ExactConfig::default())
}

pub fn exact_enum_with(inst: &Instance, delta: usize, cfg: &ExactConfig) -> Result<SolveResult> {
    enumerate(inst, delta, cfg, false)
}

/// Like [`exact_enum_with`], exploring the subtrees below each first job in
/// parallel with a shared incumbent. The value is identical to the
/// sequential search; among several optimal fix sets the one reported may
/// differ.
pub fn exact_enum_par(inst: &Instance, delta: usize, cfg: &ExactConfig) -> Result<SolveResult> {
    enumerate(inst, delta, cfg, true)
}

fn enumerate(
    inst: &Instance,
    delta: usize,
    cfg: &ExactConfig,
    parallel: bool,
) -> Result<SolveResult> {
    check_delta(inst, delta)?;
    check_budget(binomial(inst.n(), delta), cfg.budget)?;
    let start = Instant::now();

    let seed = if cfg.prune {
        Some(greedy(inst, delta)?)
    } else {
        None
    };
    let incumbent = AtomicU64::new(seed.as_ref().map_or(u64::MAX, |s| s.value));

    let mut stats = SolveStats::default();
    let mut best: Option<(u64, Vec<usize>)> = None;
    let mut absorb = |search: Search<'_>| {
        stats.evaluations += search.stats.evaluations;
        stats.nodes += search.stats.nodes;
        stats.pruned += search.stats.pruned;
        if let Some(found) = search.best {
            if best.as_ref().is_none_or(|b| found < *b) {
                best = Some(found);
            }
        }
    };

    if parallel && delta > 0 {
        let searches: Vec<Search<'_>> = (0..=inst.n() - delta)
            .into_par_iter()
            .map(|first| {
                let mut s = Search::new(inst, delta, cfg.prune, &incumbent);
                s.chosen.push(first);
                s.run(first + 1);
                s
            })
            .collect();
        searches.into_iter().for_each(&mut absorb);
    } else {
        let mut s = Search::new(inst, delta, cfg.prune, &incumbent);
        s.run(0);
        absorb(s);
    }

    if let Some(seed) = &seed {
        stats.evaluations += seed.stats.evaluations;
    }
    let result = match (best, seed) {
        (Some((value, jobs)), seed) if seed.as_ref().is_none_or(|s| value < s.value) => {
            stats.evaluations += 1;
            let eval = eval_fixed(inst, &FixSet::from_sorted_unchecked(jobs))?;
            SolveResult::from_eval(eval, SolveStats::default())
        }
        (_, Some(seed)) => seed,
        _ => unreachable!("an unpruned search visits every fix set"),
    };
    stats.elapsed = start.elapsed();
    Ok(SolveResult { stats, ..result })
}

/// Jobs grouped by their `(p, q)` pair, in order of first appearance; each
/// group lists its jobs in increasing order.
pub fn job_types(inst: &Instance) -> Vec<Vec<usize>> {
    let mut index: HashMap<(u64, u64), usize> = HashMap::new();
    let mut types: Vec<Vec<usize>> = Vec::new();
    for j in 0..inst.n() {
        let t = *index.entry(inst.job(j)).or_insert_with(|| {
            types.push(Vec::new());
            types.len() - 1
        });
        types[t].push(j);
    }
    types
}

/// Number of ways to pick `total` jobs given the type multiplicities,
/// saturating at `u128::MAX`.
fn count_vectors(multiplicities: &[usize], total: usize) -> u128 {
    let mut ways = vec![0u128; total + 1];
    ways[0] = 1;
    for &m in multiplicities {
        let mut next = vec![0u128; total + 1];
        for (r, slot) in next.iter_mut().enumerate() {
            for c in 0..=m.min(r) {
                *slot = slot.saturating_add(ways[r - c]);
            }
        }
        ways = next;
    }
    ways[total]
}

/// Optimal value by enumerating how many jobs of each `(p, q)` type enter
/// the fix set. Jobs of one type are interchangeable, so each count vector
/// is evaluated once using the lowest-indexed jobs of every type.
pub fn exact_bounded(inst: &Instance, delta: usize) -> Result<SolveResult> {
    exact_bounded_with(inst, delta, DEFAULT_SUBSET_BUDGET)
}

pub fn exact_bounded_with(inst: &Instance, delta: usize, budget: u128) -> Result<SolveResult> {
    check_delta(inst, delta)?;
    let types = job_types(inst);
    let multiplicities: Vec<usize> = types.iter().map(Vec::len).collect();
    check_budget(count_vectors(&multiplicities, delta), budget)?;
    let start = Instant::now();

    struct Walk<'a> {
        inst: &'a Instance,
        types: &'a [Vec<usize>],
        counts: Vec<usize>,
        best: Option<(u64, Vec<usize>)>,
        stats: SolveStats,
    }

    impl Walk<'_> {
        fn run(&mut self, t: usize, remaining: usize) {
            if t == self.types.len() {
                if remaining > 0 {
                    return;
                }
                let mut jobs: Vec<usize> = self
                    .types
                    .iter()
                    .zip(&self.counts)
                    .flat_map(|(group, &c)| group[..c].iter().copied())
                    .collect();
                jobs.sort_unstable();
                self.stats.nodes += 1;
                self.stats.evaluations += 1;
                let value = f_value(self.inst, &FixSet::from_sorted_unchecked(jobs.clone()))
                    .expect("type representatives are in range");
                if self.best.as_ref().is_none_or(|(b, _)| value < *b) {
                    self.best = Some((value, jobs));
                }
                return;
            }
            let tail: usize = self.types[t + 1..].iter().map(Vec::len).sum();
            let lo = remaining.saturating_sub(tail);
            let hi = remaining.min(self.types[t].len());
            for c in lo..=hi {
                self.counts[t] = c;
                self.run(t + 1, remaining - c);
            }
            self.counts[t] = 0;
        }
    }

    let mut walk = Walk {
        inst,
        types: &types,
        counts: vec![0; types.len()],
        best: None,
        stats: SolveStats::default(),
    };
    walk.run(0, delta);
    let (_, jobs) = walk
        .best
        .expect("delta <= n admits at least one count vector");
    let eval = eval_fixed(inst, &FixSet::from_sorted_unchecked(jobs))?;
    let mut stats = walk.stats;
    stats.evaluations += 1;
    stats.elapsed = start.elapsed();
    Ok(SolveResult::from_eval(eval, stats))
}

/// All permutations of `0..n` in lexicographic order.
pub fn lexicographic_permutations(n: usize) -> Vec<Vec<usize>> {
    let mut current: Vec<usize> = (0..n).collect();
    let mut out = vec![current.clone()];
    loop {
        // standard next-permutation step
        let Some(i) = (1..n).rev().find(|&i| current[i - 1] < current[i]) else {
            return out;
        };
        let pivot = i - 1;
        let swap = (i..n).rev().find(|&k| current[k] > current[pivot]).unwrap();
        current.swap(pivot, swap);
        current[i..].reverse();
        out.push(current.clone());
    }
}

/// Ground truth by exhaustive search over ordered pairs of permutations,
/// using the raw definition `|X ∩ Y| >= delta`. Among optimal pairs the
/// lexicographically smallest `(first, second)` is returned.
pub fn oracle(inst: &Instance, delta: usize) -> Result<SolveResult> {
    check_delta(inst, delta)?;
    let n = inst.n();
    if n > ORACLE_MAX_JOBS {
        return Err(Error::OracleTooLarge {
            n,
            max: ORACLE_MAX_JOBS,
        });
    }
    let start = Instant::now();
    let perms = lexicographic_permutations(n);
    let stage_value = |perm: &[usize], d: &[crate::model::Duration]| {
        weighted_sum(perm.iter().map(|&j| d[j].get()))
    };
    let first_values: Vec<u64> = perms.iter().map(|s| stage_value(s, inst.p())).collect();
    let second_values: Vec<u64> = perms.iter().map(|s| stage_value(s, inst.q())).collect();
    // Scanning second-stage schedules by (value, lexicographic rank) finds
    // the cheapest feasible partner of each first-stage schedule first.
    let mut by_second: Vec<usize> = (0..perms.len()).collect();
    by_second.sort_by_key(|&k| (second_values[k], k));

    let mut nodes = 0u64;
    let mut best: Option<(u64, usize, usize)> = None;
    for (i, first) in perms.iter().enumerate() {
        for &k in &by_second {
            let value = first_values[i] + second_values[k];
            if best.is_some_and(|(b, _, _)| value >= b) {
                break;
            }
            nodes += 1;
            let shared = first.iter().zip(&perms[k]).filter(|(a, b)| a == b).count();
            if shared >= delta {
                best = Some((value, i, k));
                break;
            }
        }
    }
    let (value, i, k) = best.expect("identical schedules satisfy every delta <= n");
    let pair = SchedulePair {
        first: Permutation::from_slots_unchecked(perms[i].clone()),
        second: Permutation::from_slots_unchecked(perms[k].clone()),
    };
    Ok(SolveResult {
        value,
        pair,
        fixed: FixSet::empty(),
        stats: SolveStats {
            nodes,
            elapsed: start.elapsed(),
            ..SolveStats::default()
        },
    })
}
