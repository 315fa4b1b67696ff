//! Worst-case instances for the full-intersection upper bound and the exact
//! ratios they produce.
//!
//! An instance is *fully crossed* when, after sorting both stages, the job
//! with the `j`-th smallest first-stage duration has the `j`-th largest
//! second-stage duration. Crossing any uncrossed pair of jobs never lowers
//! the upper bound and leaves the lower bound unchanged, so the fully
//! crossed 0-1 instances built here drive `UB / LB` towards 2.

use std::fmt;
use std::io::Write;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::Signed;

use crate::approx::{lower_bound, upper_bound};
use crate::error::{Error, Result};
use crate::exact::exact_bounded;
use crate::model::{Duration, Instance, Permutation};

pub type Rational = Ratio<i128>;

/// Pairs sorted first-stage durations with reversed sorted second-stage
/// durations: job `j` gets `(p_sorted[j], q_sorted[n - 1 - j])`.
pub fn gen_fully_crossed(p_sorted: &[Duration], q_sorted: &[Duration]) -> Result<Instance> {
    if p_sorted.len() != q_sorted.len() {
        return Err(Error::Dimension {
            expected: p_sorted.len(),
            found: q_sorted.len(),
        });
    }
    let is_sorted = |d: &[Duration]| d.windows(2).all(|w| w[0] <= w[1]);
    if !is_sorted(p_sorted) || !is_sorted(q_sorted) {
        return Err(Error::NotSorted);
    }
    let q = q_sorted.iter().rev().copied().collect();
    Instance::new(p_sorted.to_vec(), q)
}

/// The fully crossed 0-1 instance on `n` jobs. For even `n` both sorted
/// stages are `n/2` zeros followed by `n/2` ones; for odd `n` the middle job
/// has a first-stage zero and a second-stage one.
pub fn gen_fully_crossed_01(n: usize) -> Result<Instance> {
    if n == 0 {
        return Err(Error::EmptyInstance);
    }
    let zeros_p = n.div_ceil(2);
    let zeros_q = n / 2;
    let step = |zeros: usize| -> Vec<Duration> {
        (0..n)
            .map(|i| {
                if i < zeros {
                    Duration::ZERO
                } else {
                    Duration::new(1).unwrap()
                }
            })
            .collect()
    };
    gen_fully_crossed(&step(zeros_p), &step(zeros_q))
}

/// Swaps the second-stage durations of the 0-based jobs `a` and `b`.
pub fn cross_pair(inst: &Instance, a: usize, b: usize) -> Result<Instance> {
    let n = inst.n();
    for j in [a, b] {
        if j >= n {
            return Err(Error::JobOutOfRange { job: j + 1, n });
        }
    }
    if a == b {
        return Err(Error::Domain(format!(
            "cannot cross job {} with itself",
            a + 1
        )));
    }
    let mut q = inst.q().to_vec();
    q.swap(a, b);
    Instance::new(inst.p().to_vec(), q)
}

/// Exact `UB / LB` of [`gen_fully_crossed_01`]: `(2n + 2) / (n + 2)` for
/// even `n`, `2n / (n + 1)` for odd `n`.
pub fn ratio_closed_form(n: usize) -> Result<Rational> {
    if n == 0 {
        return Err(Error::EmptyInstance);
    }
    let n = n as i128;
    Ok(if n % 2 == 0 {
        Rational::new(2 * n + 2, n + 2)
    } else {
        Rational::new(2 * n, n + 1)
    })
}

/// Optimal value `(n² + Δ² + 2n) / 4` of the fully crossed 0-1 instance when
/// `n - delta` is even.
pub fn vstar_01(n: usize, delta: usize) -> Result<u64> {
    if delta > n {
        return Err(Error::DeltaOutOfRange { delta, n });
    }
    if !(n - delta).is_multiple_of(2) {
        return Err(Error::Domain(format!(
            "no closed form for n - delta odd (n = {n}, delta = {delta})"
        )));
    }
    let (n, d) = (n as u64, delta as u64);
    let numerator = n * n + d * d + 2 * n;
    debug_assert_eq!(numerator % 4, 0);
    Ok(numerator / 4)
}

/// Limit of `UB / OPT` on fully crossed 0-1 instances with `delta = gamma·n`
/// as `n` grows: `2 / (1 + γ²)`.
pub fn limiting_ratio(gamma: Rational) -> Result<Rational> {
    if gamma.is_negative() || gamma > Rational::from_integer(1) {
        return Err(Error::Domain(format!("gamma = {gamma} outside [0, 1]")));
    }
    Ok(Rational::from_integer(2) / (Rational::from_integer(1) + gamma * gamma))
}

/// Right-hand side `max{2j - n - 1, n + 1 - 2j}` of the position constraint
/// for each 1-based job `j`, listed for `j = 1..=n`.
pub fn certificate_rhs(n: usize) -> Vec<i64> {
    let n = n as i64;
    (1..=n)
        .map(|j| (2 * j - n - 1).max(n + 1 - 2 * j))
        .collect()
}

/// Assignment that fills positions `n, n-1, ..., 1` alternately with the
/// largest and the smallest unassigned job. Every job `j` then sits at a
/// 1-based position of at least `max{2j - n - 1, n + 1 - 2j}`, which makes
/// the factor 2 a feasible dual bound.
pub fn two_approx_certificate(n: usize) -> Result<Permutation> {
    if n == 0 {
        return Err(Error::EmptyInstance);
    }
    let mut slots = vec![0; n];
    let (mut low, mut high) = (0, n - 1);
    for (k, pos) in (0..n).rev().enumerate() {
        if k % 2 == 0 {
            slots[pos] = high;
            high = high.wrapping_sub(1);
        } else {
            slots[pos] = low;
            low += 1;
        }
    }
    Ok(Permutation::from_slots_unchecked(slots))
}

/// Whether every job's 1-based position meets [`certificate_rhs`].
pub fn satisfies_position_bound(perm: &Permutation) -> bool {
    let rhs = certificate_rhs(perm.len());
    perm.positions()
        .iter()
        .zip(&rhs)
        .all(|(&pos, &bound)| (pos as i64 + 1) >= bound)
}

/// Bounds and ratios for one `(instance, delta)` combination. All ratios are
/// exact quotients of the stored integers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatioReport {
    pub n: usize,
    pub delta: usize,
    pub gamma: Rational,
    pub ub: u64,
    pub lb: u64,
    pub opt: Option<u64>,
    /// `None` when `lb` is zero.
    pub ratio_ub_lb: Option<Rational>,
    pub ratio_ub_opt: Option<Rational>,
}

fn quotient(num: u64, den: u64) -> Option<Rational> {
    (den != 0).then(|| Rational::new(num as i128, den as i128))
}

pub fn ratio_report(inst: &Instance, delta: usize, opt: Option<u64>) -> Result<RatioReport> {
    let n = inst.n();
    if delta > n {
        return Err(Error::DeltaOutOfRange { delta, n });
    }
    let ub = upper_bound(inst).value;
    let lb = lower_bound(inst).value;
    Ok(RatioReport {
        n,
        delta,
        gamma: Rational::new(delta as i128, n as i128),
        ub,
        lb,
        opt,
        ratio_ub_lb: quotient(ub, lb),
        ratio_ub_opt: opt.and_then(|o| quotient(ub, o)),
    })
}

/// One report per `(n, delta)` with `1 <= n <= n_max`, `0 <= delta <= n`, on
/// the fully crossed 0-1 instances. The optimum comes from the type-count
/// solver, which needs at most `delta + 1` evaluations on these instances.
pub fn ratio_curve(n_max: usize) -> Result<Vec<RatioReport>> {
    let mut out = Vec::new();
    for n in 1..=n_max {
        let inst = gen_fully_crossed_01(n)?;
        for delta in 0..=n {
            let opt = exact_bounded(&inst, delta)?.value;
            out.push(ratio_report(&inst, delta, Some(opt))?);
        }
    }
    Ok(out)
}

/// Renders `r` in decimal with `places` fractional digits, rounding half
/// away from zero.
pub fn decimal<T>(r: &Ratio<T>, places: u32) -> String
where
    T: Clone + Integer + Signed + fmt::Display + From<u8>,
{
    let mut scale = T::one();
    for _ in 0..places {
        scale = scale * T::from(10);
    }
    let scaled = (r * Ratio::from_integer(scale.clone()))
        .round()
        .to_integer();
    let sign = if scaled.is_negative() { "-" } else { "" };
    let (int, frac) = scaled.abs().div_rem(&scale);
    if places == 0 {
        format!("{sign}{int}")
    } else {
        format!(
            "{sign}{int}.{:0>width$}",
            frac.to_string(),
            width = places as usize
        )
    }
}

pub const RATIO_CSV_HEADER: [&str; 9] = [
    "n",
    "delta",
    "gamma_num",
    "gamma_den",
    "ub",
    "lb",
    "opt",
    "ub_over_lb",
    "ub_over_opt",
];

/// Writes reports as CSV. Ratios are printed with six decimals; missing
/// values are left empty.
pub fn write_ratio_csv<W: Write>(reports: &[RatioReport], out: W) -> csv::Result<()> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out);
    w.write_record(RATIO_CSV_HEADER)?;
    let ratio = |r: &Option<Rational>| r.as_ref().map(|r| decimal(r, 6)).unwrap_or_default();
    for r in reports {
        w.write_record([
            r.n.to_string(),
            r.delta.to_string(),
            r.gamma.numer().to_string(),
            r.gamma.denom().to_string(),
            r.ub.to_string(),
            r.lb.to_string(),
            r.opt.map(|o| o.to_string()).unwrap_or_default(),
            ratio(&r.ratio_ub_lb),
            ratio(&r.ratio_ub_opt),
        ])?;
    }
    w.flush()?;
    Ok(())
}

impl RatioReport {
    /// `|UB/OPT - limit|` for the report's gamma, if the optimum is known.
    pub fn distance_to_limit(&self) -> Option<Rational> {
        let limit = limiting_ratio(self.gamma).ok()?;
        self.ratio_ub_opt.map(|r| (r - limit).abs())
    }
}
