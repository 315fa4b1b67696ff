//! Export of the assignment-based mixed-integer model in CPLEX LP format.
//!
//! Variables `x_i_j` / `y_i_j` place job `j` at position `i` in the first /
//! second stage; `z_i_j <= min(x_i_j, y_i_j)` marks shared placements and
//! `sum z >= delta` enforces the intersection. Indices are 1-based. `z` is
//! continuous in `[0, 1]` in both variants since `x` and `y` already force it
//! integral at an optimum.

use std::fmt::Write;

use crate::approx::check_delta;
use crate::error::Result;
use crate::model::Instance;

const TERMS_PER_LINE: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModelSpec {
    pub inst: Instance,
    pub delta: usize,
    /// Continuous `[0, 1]` variables instead of binaries.
    pub relaxed: bool,
}

impl ModelSpec {
    pub fn new(inst: Instance, delta: usize, relaxed: bool) -> Result<Self> {
        check_delta(&inst, delta)?;
        Ok(ModelSpec {
            inst,
            delta,
            relaxed,
        })
    }
}

fn var(kind: char, i: usize, j: usize) -> String {
    format!("{kind}_{i}_{j}")
}

/// Writes `label: t1 + t2 + ...` wrapped after every `TERMS_PER_LINE` terms,
/// followed by `tail` (e.g. ` = 1`).
fn write_row(out: &mut String, label: &str, terms: &[String], tail: &str) {
    write!(out, " {label}:").unwrap();
    for (k, term) in terms.iter().enumerate() {
        if k > 0 && k % TERMS_PER_LINE == 0 {
            out.push_str("\n   ");
        }
        if k == 0 {
            write!(out, " {term}").unwrap();
        } else {
            write!(out, " + {term}").unwrap();
        }
    }
    out.push_str(tail);
    out.push('\n');
}

fn write_list(out: &mut String, names: &[String]) {
    for chunk in names.chunks(TERMS_PER_LINE) {
        out.push(' ');
        out.push_str(&chunk.join(" "));
        out.push('\n');
    }
}

/// Renders the model. Output depends only on `spec`.
pub fn write_lp(spec: &ModelSpec) -> String {
    let inst = &spec.inst;
    let n = inst.n();
    let positions = 1..=n;
    let mut out = String::new();

    writeln!(
        out,
        "\\ two-stage single machine model: n = {n}, delta = {}, {}",
        spec.delta,
        if spec.relaxed { "relaxed" } else { "binary" }
    )
    .unwrap();

    out.push_str("Minimize\n");
    let mut objective = Vec::new();
    for (kind, stage) in [('x', inst.p()), ('y', inst.q())] {
        for i in positions.clone() {
            for j in 1..=n {
                let coef = (n + 1 - i) as u64 * stage[j - 1].get();
                if coef != 0 {
                    objective.push(format!("{coef} {}", var(kind, i, j)));
                }
            }
        }
    }
    if objective.is_empty() {
        objective.push(format!("0 {}", var('x', 1, 1)));
    }
    write_row(&mut out, "obj", &objective, "");

    out.push_str("Subject To\n");
    for kind in ['x', 'y'] {
        for i in positions.clone() {
            let terms: Vec<String> = (1..=n).map(|j| var(kind, i, j)).collect();
            write_row(&mut out, &format!("{kind}pos_{i}"), &terms, " = 1");
        }
        for j in 1..=n {
            let terms: Vec<String> = (1..=n).map(|i| var(kind, i, j)).collect();
            write_row(&mut out, &format!("{kind}job_{j}"), &terms, " = 1");
        }
    }
    for kind in ['x', 'y'] {
        for i in positions.clone() {
            for j in 1..=n {
                writeln!(
                    out,
                    " z{kind}_{i}_{j}: {} - {} <= 0",
                    var('z', i, j),
                    var(kind, i, j)
                )
                .unwrap();
            }
        }
    }
    let shared: Vec<String> = positions
        .clone()
        .flat_map(|i| (1..=n).map(move |j| var('z', i, j)))
        .collect();
    write_row(
        &mut out,
        "intersect",
        &shared,
        &format!(" >= {}", spec.delta),
    );

    let names = |kind: char| -> Vec<String> {
        (1..=n)
            .flat_map(|i| (1..=n).map(move |j| var(kind, i, j)))
            .collect()
    };
    out.push_str("Bounds\n");
    let bounded: Vec<char> = if spec.relaxed {
        vec!['x', 'y', 'z']
    } else {
        vec!['z']
    };
    for kind in bounded {
        for name in names(kind) {
            writeln!(out, " 0 <= {name} <= 1").unwrap();
        }
    }
    if !spec.relaxed {
        out.push_str("Binaries\n");
        write_list(&mut out, &names('x'));
        write_list(&mut out, &names('y'));
    }
    out.push_str("End\n");
    out
}
