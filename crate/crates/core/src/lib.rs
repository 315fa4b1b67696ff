//! Two-stage single machine scheduling with a recoverable intersection
//! requirement: two job orders, one per stage, must place at least `delta`
//! jobs at the same position while minimizing the summed total completion
//! time.
//!
//! The [`recfix`] module evaluates the problem for a fixed set of shared jobs
//! in `O(n log n)`; [`approx`] and [`exact`] build solvers on top of it.

pub mod analysis;
pub mod approx;
pub mod error;
pub mod exact;
pub mod harness;
pub mod mipio;
pub mod model;
pub mod recfix;

pub use approx::{
    greedy, greedy_steps, lower_bound, upper_bound, GreedyStep, SolveResult, SolveStats,
};
pub use error::{Error, Result};
pub use exact::{exact_bounded, exact_enum, exact_enum_par, oracle, ExactConfig};
pub use model::{
    intersection, objective, pair_value, spt, Duration, Instance, IntervalInstance, Permutation,
    SchedulePair,
};
pub use recfix::{eval_fixed, f_value, EvalResult, FixSet};
