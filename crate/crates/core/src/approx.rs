//! Lower bound, full-intersection upper bound, and the greedy fix-set
//! heuristic. The upper bound and the greedy result are both within a factor
//! of two of the optimum.

use std::time::Instant;

use crate::error::{Error, Result};
use crate::model::{sorted_by_key, weighted_sum, Instance, Permutation, SchedulePair};
use crate::recfix::{eval_fixed, f_value, EvalResult, FixSet};

/// Counters collected by a solver run.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SolveStats {
    /// Number of fix-set evaluations (`f(M)` computations).
    pub evaluations: u64,
    /// Search nodes visited (exact solvers only).
    pub nodes: u64,
    /// Search nodes cut off by the bound (exact solvers only).
    pub pruned: u64,
    pub elapsed: std::time::Duration,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveResult {
    pub value: u64,
    pub pair: SchedulePair,
    /// Fix set behind the solution; empty when the solver does not work on
    /// fix sets.
    pub fixed: FixSet,
    pub stats: SolveStats,
}

impl SolveResult {
    pub(crate) fn from_eval(eval: EvalResult, stats: SolveStats) -> Self {
        SolveResult {
            value: eval.value,
            pair: eval.pair,
            fixed: eval.fixed,
            stats,
        }
    }
}

pub(crate) fn check_delta(inst: &Instance, delta: usize) -> Result<()> {
    if delta > inst.n() {
        return Err(Error::DeltaOutOfRange { delta, n: inst.n() });
    }
    Ok(())
}

/// Both stages scheduled independently in SPT order. The pair ignores the
/// intersection requirement, so its value bounds every optimum from below.
pub fn lower_bound(inst: &Instance) -> SolveResult {
    let start = Instant::now();
    let n = inst.n();
    let first = sorted_by_key(n, |j| inst.p()[j].get());
    let second = sorted_by_key(n, |j| inst.q()[j].get());
    let value = weighted_sum(first.iter().map(|&j| inst.p()[j].get()))
        + weighted_sum(second.iter().map(|&j| inst.q()[j].get()));
    SolveResult {
        value,
        pair: SchedulePair {
            first: Permutation::from_slots_unchecked(first),
            second: Permutation::from_slots_unchecked(second),
        },
        fixed: FixSet::empty(),
        stats: SolveStats {
            elapsed: start.elapsed(),
            ..SolveStats::default()
        },
    }
}

/// Identical schedules in both stages, ordered by `p + q`. Feasible for
/// every `delta` and equal to `f(N)`.
pub fn upper_bound(inst: &Instance) -> SolveResult {
    let start = Instant::now();
    let n = inst.n();
    let order = sorted_by_key(n, |j| inst.joint(j));
    let value = weighted_sum(order.iter().map(|&j| inst.joint(j)));
    let perm = Permutation::from_slots_unchecked(order);
    SolveResult {
        value,
        pair: SchedulePair {
            first: perm.clone(),
            second: perm,
        },
        fixed: FixSet::all(n),
        stats: SolveStats {
            elapsed: start.elapsed(),
            ..SolveStats::default()
        },
    }
}

/// One round of the greedy heuristic.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GreedyStep {
    /// 0-based job added to the fix set.
    pub job: usize,
    /// `f(M)` after adding `job`.
    pub value: u64,
    /// Intersection of the schedule pair realising `value`.
    pub intersection: usize,
}

/// Greedy heuristic: grow the fix set one job at a time, always adding the
/// job that yields the smallest `f(M ∪ {j})` (smallest index on ties),
/// until the realised schedule pair shares at least `delta` positions.
pub fn greedy(inst: &Instance, delta: usize) -> Result<SolveResult> {
    greedy_steps(inst, delta).map(|(result, _)| result)
}

/// [`greedy`] together with the sequence of rounds it performed.
pub fn greedy_steps(inst: &Instance, delta: usize) -> Result<(SolveResult, Vec<GreedyStep>)> {
    check_delta(inst, delta)?;
    let start = Instant::now();
    let n = inst.n();
    let mut evaluations = 1;
    let mut current = eval_fixed(inst, &FixSet::empty())?;
    let mut steps = Vec::new();

    while current.pair.intersection() < delta {
        let mut best: Option<(u64, usize)> = None;
        for j in (0..n).filter(|&j| !current.fixed.contains(j)) {
            let v = f_value(inst, &current.fixed.with(j))?;
            evaluations += 1;
            if best.is_none_or(|(bv, _)| v < bv) {
                best = Some((v, j));
            }
        }
        // The realised intersection is at least |M|, so a free job remains
        // whenever the loop condition holds.
        let (_, job) = best.expect("intersection below delta with every job fixed");
        current = eval_fixed(inst, &current.fixed.with(job))?;
        evaluations += 1;
        steps.push(GreedyStep {
            job,
            value: current.value,
            intersection: current.pair.intersection(),
        });
    }

    let stats = SolveStats {
        evaluations,
        elapsed: start.elapsed(),
        ..SolveStats::default()
    };
    Ok((SolveResult::from_eval(current, stats), steps))
}
