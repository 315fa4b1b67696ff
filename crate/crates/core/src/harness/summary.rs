use std::collections::BTreeMap;
use std::io::Write;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::{Algo, ExperimentRecord};
use crate::analysis::{decimal, Rational};

/// Gap statistics of one heuristic for one `(n, delta)` cell, in percent of
/// the exact value. Kept as arbitrary-precision fractions: the common
/// denominator of many gaps quickly outgrows fixed-width integers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GapSummary {
    pub n: usize,
    pub delta: usize,
    pub algo: Algo,
    /// Instances with a usable baseline.
    pub instances: usize,
    /// Instances without a baseline, or whose baseline is zero.
    pub excluded: usize,
    pub avg_gap_pct: Option<BigRational>,
    pub max_gap_pct: Option<BigRational>,
    /// Share of instances with a strictly positive gap.
    pub pct_nonzero: Option<BigRational>,
}

/// `100 * (value - exact) / exact`; `None` when `exact` is zero.
pub fn gap_pct(value: u64, exact: u64) -> Option<Rational> {
    if exact == 0 {
        return None;
    }
    Some(Rational::new(
        100 * (value as i128 - exact as i128),
        exact as i128,
    ))
}

/// Summarizes the `ub` and `greedy` records against the `exact` record of the
/// same instance and delta, falling back to `oracle`. Sorted by
/// `(n, delta, algo)`.
pub fn summarize(records: &[ExperimentRecord]) -> Vec<GapSummary> {
    let mut baseline: BTreeMap<(&str, usize), (Algo, u64)> = BTreeMap::new();
    for r in records {
        if !matches!(r.algo, Algo::Exact | Algo::Oracle) {
            continue;
        }
        let key = (r.instance_id.as_str(), r.delta);
        match baseline.get(&key) {
            Some((Algo::Exact, _)) => {}
            _ => {
                baseline.insert(key, (r.algo, r.value));
            }
        }
    }

    let mut cells: BTreeMap<(usize, usize, Algo), (Vec<BigRational>, usize)> = BTreeMap::new();
    for r in records {
        if !matches!(r.algo, Algo::Ub | Algo::Greedy) {
            continue;
        }
        let cell = cells.entry((r.n, r.delta, r.algo)).or_default();
        match baseline
            .get(&(r.instance_id.as_str(), r.delta))
            .and_then(|&(_, exact)| gap_pct(r.value, exact))
        {
            Some(g) => cell.0.push(big(&g)),
            None => cell.1 += 1,
        }
    }

    cells
        .into_iter()
        .map(|((n, delta, algo), (gaps, excluded))| {
            let k = BigInt::from(gaps.len());
            let (avg, max, nonzero) = if gaps.is_empty() {
                (None, None, None)
            } else {
                let sum: BigRational = gaps.iter().sum();
                let positive = gaps.iter().filter(|g| g.numer() > &BigInt::from(0)).count();
                (
                    Some(sum / k.clone()),
                    gaps.iter().max().cloned(),
                    Some(BigRational::new(BigInt::from(100 * positive), k)),
                )
            };
            GapSummary {
                n,
                delta,
                algo,
                instances: gaps.len(),
                excluded,
                avg_gap_pct: avg,
                max_gap_pct: max,
                pct_nonzero: nonzero,
            }
        })
        .collect()
}

fn big(r: &Rational) -> BigRational {
    BigRational::new(BigInt::from(*r.numer()), BigInt::from(*r.denom()))
}

pub const SUMMARY_CSV_HEADER: &str =
    "n,delta,algo,instances,excluded,avg_gap_pct,max_gap_pct,pct_nonzero";

/// Percentages are rounded to two decimals; missing values are empty.
pub fn write_summary_csv<W: Write>(rows: &[GapSummary], out: W) -> csv::Result<()> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out);
    w.write_record(SUMMARY_CSV_HEADER.split(','))?;
    let fmt = |v: &Option<BigRational>| v.as_ref().map(|r| decimal(r, 2)).unwrap_or_default();
    for s in rows {
        w.write_record([
            s.n.to_string(),
            s.delta.to_string(),
            s.algo.to_string(),
            s.instances.to_string(),
            s.excluded.to_string(),
            fmt(&s.avg_gap_pct),
            fmt(&s.max_gap_pct),
            fmt(&s.pct_nonzero),
        ])?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rec(id: &str, delta: usize, algo: Algo, value: u64) -> ExperimentRecord {
        ExperimentRecord {
            instance_id: id.into(),
            n: 4,
            delta,
            algo,
            value,
            elapsed_ms: 0.0,
            evaluations: 0,
            seed: 0,
        }
    }

    fn int(v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }

    fn render(rows: &[GapSummary]) -> String {
        let mut buf = Vec::new();
        write_summary_csv(rows, &mut buf).unwrap();
        String::from_utf8(buf).unwrap()
    }

    #[test]
    fn gap_values() {
        assert_eq!(gap_pct(110, 100), Some(Rational::from(10)));
        assert_eq!(gap_pct(10, 6), Some(Rational::new(200, 3)));
        assert_eq!(gap_pct(5, 0), None);
    }

    #[test]
    fn all_zero_gaps() {
        let records = [
            rec("a", 1, Algo::Exact, 50),
            rec("a", 1, Algo::Greedy, 50),
            rec("b", 1, Algo::Exact, 70),
            rec("b", 1, Algo::Greedy, 70),
        ];
        let rows = summarize(&records);
        assert_eq!(rows.len(), 1);
        assert_eq!(rows[0].instances, 2);
        assert_eq!(rows[0].avg_gap_pct, Some(int(0)));
        assert_eq!(rows[0].pct_nonzero, Some(int(0)));
        assert!(render(&rows).ends_with("\n4,1,greedy,2,0,0.00,0.00,0.00\n"));
    }

    #[test]
    fn ten_percent() {
        let rows = summarize(&[rec("a", 0, Algo::Exact, 100), rec("a", 0, Algo::Ub, 110)]);
        assert!(render(&rows).ends_with("\n4,0,ub,1,0,10.00,10.00,100.00\n"));
    }

    #[test]
    fn crossed_instance_upper_bound_gap() {
        let rows = summarize(&[rec("x", 0, Algo::Ub, 10), rec("x", 0, Algo::Exact, 6)]);
        assert!(render(&rows).ends_with("\n4,0,ub,1,0,66.67,66.67,100.00\n"));
    }

    #[test]
    fn oracle_fallback_and_exclusions() {
        let records = [
            rec("a", 2, Algo::Oracle, 40),
            rec("a", 2, Algo::Ub, 50),
            rec("b", 2, Algo::Ub, 9),
            rec("c", 2, Algo::Exact, 0),
            rec("c", 2, Algo::Ub, 0),
        ];
        let rows = summarize(&records);
        assert_eq!(rows[0].instances, 1);
        assert_eq!(rows[0].excluded, 2);
        assert_eq!(rows[0].max_gap_pct, Some(int(25)));
    }

    #[test]
    fn exact_preferred_over_oracle() {
        let records = [
            rec("a", 1, Algo::Exact, 40),
            rec("a", 1, Algo::Oracle, 41),
            rec("a", 1, Algo::Greedy, 40),
        ];
        assert_eq!(summarize(&records)[0].max_gap_pct, Some(int(0)));
    }

    #[test]
    fn many_distinct_denominators() {
        // 100 pairwise different optima; the exact sum needs far more than
        // 128 bits of denominator
        let records: Vec<ExperimentRecord> = (0..100)
            .flat_map(|k| {
                let id = format!("i{k:03}");
                let exact = 10_007 + 2 * k as u64;
                [
                    rec(&id, 0, Algo::Exact, exact),
                    rec(&id, 0, Algo::Ub, exact + 1),
                ]
            })
            .collect();
        let rows = summarize(&records);
        let avg = rows[0].avg_gap_pct.clone().unwrap();
        assert!(avg > BigRational::new(BigInt::from(9), BigInt::from(1000)));
        assert!(avg < BigRational::new(BigInt::from(1), BigInt::from(100)));
        assert!(render(&rows).ends_with("\n4,0,ub,100,0,0.01,0.01,100.00\n"));
    }

    #[test]
    fn missing_statistics_render_empty() {
        let rows = summarize(&[rec("a", 3, Algo::Greedy, 12)]);
        assert!(render(&rows).ends_with("\n4,3,greedy,0,1,,,\n"));
    }
}
