//! Reads the exported LP text back with a small independent parser and
//! checks the model against known schedules.

use std::collections::{BTreeMap, BTreeSet};

use proptest::prelude::*;
use recsmsp::exact::exact_enum;
use recsmsp::mipio::{write_lp, ModelSpec};
use recsmsp::{upper_bound, Instance, SchedulePair};

#[derive(Debug, PartialEq)]
enum Sense {
    Le,
    Ge,
    Eq,
}

#[derive(Debug)]
struct Row {
    name: String,
    coefs: BTreeMap<String, i64>,
    sense: Sense,
    rhs: i64,
}

#[derive(Debug, Default)]
struct Model {
    objective: BTreeMap<String, i64>,
    rows: Vec<Row>,
    bounded: BTreeSet<String>,
    binaries: BTreeSet<String>,
}

fn parse_terms(text: &str) -> BTreeMap<String, i64> {
    let mut out = BTreeMap::new();
    let mut sign = 1;
    let mut coef: Option<i64> = None;
    for tok in text.split_whitespace() {
        match tok {
            "+" => sign = 1,
            "-" => sign = -1,
            _ => {
                if let Ok(c) = tok.parse::<i64>() {
                    coef = Some(c);
                } else {
                    *out.entry(tok.to_string()).or_insert(0) += sign * coef.take().unwrap_or(1);
                    sign = 1;
                }
            }
        }
    }
    out
}

fn parse(text: &str) -> Model {
    // join continuation lines onto their statement
    let mut statements: Vec<String> = Vec::new();
    for line in text.lines() {
        if line.starts_with('\\') {
            continue;
        }
        if line.starts_with("    ") {
            statements.last_mut().unwrap().push_str(line);
        } else {
            statements.push(line.to_string());
        }
    }
    let mut model = Model::default();
    let mut section = "";
    for s in &statements {
        match s.as_str() {
            "Minimize" | "Subject To" | "Bounds" | "Binaries" | "End" => {
                section = s.as_str();
                continue;
            }
            _ => {}
        }
        match section {
            "Minimize" => {
                let body = s.split_once(':').unwrap().1;
                model.objective = parse_terms(body);
            }
            "Subject To" => {
                let (name, body) = s.split_once(':').unwrap();
                let (lhs, sense, rhs) = if let Some((l, r)) = body.split_once("<=") {
                    (l, Sense::Le, r)
                } else if let Some((l, r)) = body.split_once(">=") {
                    (l, Sense::Ge, r)
                } else {
                    let (l, r) = body.split_once('=').unwrap();
                    (l, Sense::Eq, r)
                };
                model.rows.push(Row {
                    name: name.trim().to_string(),
                    coefs: parse_terms(lhs),
                    sense,
                    rhs: rhs.trim().parse().unwrap(),
                });
            }
            "Bounds" => {
                let parts: Vec<&str> = s.split_whitespace().collect();
                assert_eq!(parts.len(), 5, "bound line {s:?}");
                assert_eq!(
                    (parts[0], parts[1], parts[3], parts[4]),
                    ("0", "<=", "<=", "1")
                );
                model.bounded.insert(parts[2].to_string());
            }
            "Binaries" => model
                .binaries
                .extend(s.split_whitespace().map(String::from)),
            other => panic!("statement {s:?} outside a section ({other:?})"),
        }
    }
    assert_eq!(section, "End");
    model
}

/// 0/1 values of x, y and z for a schedule pair (1-based names).
fn assignment(pair: &SchedulePair) -> BTreeMap<String, i64> {
    let n = pair.n();
    let mut v = BTreeMap::new();
    for i in 1..=n {
        for j in 1..=n {
            let x = (pair.first.slots()[i - 1] == j - 1) as i64;
            let y = (pair.second.slots()[i - 1] == j - 1) as i64;
            v.insert(format!("x_{i}_{j}"), x);
            v.insert(format!("y_{i}_{j}"), y);
            v.insert(format!("z_{i}_{j}"), x * y);
        }
    }
    v
}

fn satisfied(row: &Row, v: &BTreeMap<String, i64>) -> bool {
    let lhs: i64 = row.coefs.iter().map(|(k, c)| c * v[k]).sum();
    match row.sense {
        Sense::Le => lhs <= row.rhs,
        Sense::Ge => lhs >= row.rhs,
        Sense::Eq => lhs == row.rhs,
    }
}

fn objective(model: &Model, v: &BTreeMap<String, i64>) -> i64 {
    model.objective.iter().map(|(k, c)| c * v[k]).sum()
}

fn five_jobs() -> Instance {
    Instance::from_values(&[5, 3, 5, 1, 2], &[4, 1, 9, 5, 6]).unwrap()
}

#[test]
fn structure_counts() {
    let n = 5;
    let model = parse(&write_lp(&ModelSpec::new(five_jobs(), 2, false).unwrap()));
    let count = |s: Sense| model.rows.iter().filter(|r| r.sense == s).count();
    assert_eq!(count(Sense::Eq), 4 * n);
    assert_eq!(count(Sense::Le), 2 * n * n);
    assert_eq!(count(Sense::Ge), 1);
    let vars: BTreeSet<&String> = model.rows.iter().flat_map(|r| r.coefs.keys()).collect();
    assert_eq!(vars.len(), 3 * n * n);
    assert_eq!(model.binaries.len(), 2 * n * n);
    assert_eq!(model.bounded.len(), n * n);
    assert!(model.bounded.iter().all(|v| v.starts_with("z_")));
    let intersect = model.rows.iter().find(|r| r.name == "intersect").unwrap();
    assert_eq!(intersect.rhs, 2);
    assert_eq!(intersect.coefs.len(), n * n);
}

#[test]
fn relaxed_variant_bounds_all_variables() {
    let model = parse(&write_lp(&ModelSpec::new(five_jobs(), 2, true).unwrap()));
    assert!(model.binaries.is_empty());
    assert_eq!(model.bounded.len(), 3 * 25);
}

#[test]
fn reference_schedules_are_feasible_with_matching_objective() {
    let pair = SchedulePair::new(
        recsmsp::Permutation::from_one_based(&[5, 4, 2, 1, 3]).unwrap(),
        recsmsp::Permutation::from_one_based(&[2, 4, 1, 5, 3]).unwrap(),
    )
    .unwrap();
    let model = parse(&write_lp(&ModelSpec::new(five_jobs(), 2, false).unwrap()));
    let v = assignment(&pair);
    assert!(model.rows.iter().all(|r| satisfied(r, &v)));
    assert_eq!(objective(&model, &v), 96);

    // the same pair violates only the intersection row when delta is 3
    let model = parse(&write_lp(&ModelSpec::new(five_jobs(), 3, false).unwrap()));
    let violated: Vec<&str> = model
        .rows
        .iter()
        .filter(|r| !satisfied(r, &v))
        .map(|r| r.name.as_str())
        .collect();
    assert_eq!(violated, ["intersect"]);
}

#[test]
fn golden_files_match() {
    let golden = |name: &str| {
        std::fs::read_to_string(format!(
            "{}/tests/golden/{name}",
            env!("CARGO_MANIFEST_DIR")
        ))
        .unwrap()
    };
    assert_eq!(
        write_lp(&ModelSpec::new(five_jobs(), 2, false).unwrap()),
        golden("five_jobs_delta2.lp")
    );
    let crossed = Instance::from_values(&[0, 0, 1, 1], &[1, 1, 0, 0]).unwrap();
    for delta in [1, 3] {
        assert_eq!(
            write_lp(&ModelSpec::new(crossed.clone(), delta, true).unwrap()),
            golden(&format!("crossed4_delta{delta}_relaxed.lp"))
        );
    }
}

proptest! {
    #[test]
    fn solver_pairs_are_feasible(
        jobs in prop::collection::vec((0u64..20, 0u64..20), 1..=6),
        delta_seed in 0usize..100,
    ) {
        let (p, q): (Vec<u64>, Vec<u64>) = jobs.into_iter().unzip();
        let inst = Instance::from_values(&p, &q).unwrap();
        let delta = delta_seed % (inst.n() + 1);
        let model = parse(&write_lp(&ModelSpec::new(inst.clone(), delta, false).unwrap()));
        for r in [exact_enum(&inst, delta).unwrap(), upper_bound(&inst)] {
            let v = assignment(&r.pair);
            prop_assert!(model.rows.iter().all(|row| satisfied(row, &v)));
            prop_assert_eq!(objective(&model, &v), r.value as i64);
        }
    }
}
