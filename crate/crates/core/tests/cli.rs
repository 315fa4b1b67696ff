use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use tempfile::tempdir;

fn recsmsp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_recsmsp"))
        .args(args)
        .output()
        .unwrap()
}

fn data(name: &str) -> String {
    format!("{}/tests/data/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn gen_matches_golden_instances() {
    let dir = tempdir().unwrap();
    let out = dir.path().join("inst.txt");
    let o = recsmsp(&[
        "gen",
        "--n",
        "10",
        "--count",
        "100",
        "--seed",
        "42",
        "--out",
        path_str(&out),
    ]);
    assert!(o.status.success());
    assert_eq!(
        fs::read(&out).unwrap(),
        fs::read(data("n10_seed42.txt")).unwrap()
    );
}

#[test]
fn solve_five_jobs() {
    let o = recsmsp(&[
        "solve",
        "--algo",
        "exact",
        "--delta",
        "2",
        "--in",
        &data("five_jobs.txt"),
    ]);
    assert!(o.status.success());
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.contains("value 96\n"));
    assert!(text.contains("intersection 2\n"));

    let o = recsmsp(&[
        "solve",
        "--algo",
        "greedy",
        "--delta",
        "2",
        "--in",
        &data("five_jobs.txt"),
    ]);
    assert!(String::from_utf8(o.stdout).unwrap().contains("value 96\n"));
}

#[test]
fn export_to_stdout_matches_golden() {
    let o = recsmsp(&["export-mip", "--delta", "2", "--in", &data("five_jobs.txt")]);
    assert!(o.status.success());
    let golden = fs::read(format!(
        "{}/tests/golden/five_jobs_delta2.lp",
        env!("CARGO_MANIFEST_DIR")
    ));
    assert_eq!(o.stdout, golden.unwrap());
}

#[test]
fn bench_writes_records_and_summary() {
    let dir = tempdir().unwrap();
    let out = dir.path().join("r.csv");
    let summary = dir.path().join("s.csv");
    let o = recsmsp(&[
        "bench",
        "--n",
        "5",
        "--count",
        "3",
        "--seed",
        "7",
        "--deltas",
        "0,5",
        "--algos",
        "ub,exact",
        "--out",
        path_str(&out),
        "--summary",
        path_str(&summary),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let records = fs::read_to_string(&out).unwrap();
    assert!(records.starts_with("instance_id,n,delta,algo,value,elapsed_ms,evaluations,seed\n"));
    assert_eq!(records.lines().count(), 1 + 3 * 2 * 2);
    let summary = fs::read_to_string(&summary).unwrap();
    assert_eq!(summary.lines().count(), 1 + 2);
    assert!(summary
        .lines()
        .nth(2)
        .unwrap()
        .starts_with("5,5,ub,3,0,0.00,0.00,0.00"));
}

#[test]
fn ratios_csv() {
    let dir = tempdir().unwrap();
    let out = dir.path().join("ratios.csv");
    let o = recsmsp(&["ratios", "--n-max", "4", "--out", path_str(&out)]);
    assert!(o.status.success());
    let text = fs::read_to_string(&out).unwrap();
    assert_eq!(text.lines().count(), 1 + 2 + 3 + 4 + 5);
    assert!(text.contains("\n4,0,0,1,10,6,6,1.666667,1.666667\n"));
}

#[test]
fn errors_exit_nonzero_with_one_line() {
    let dir = tempdir().unwrap();
    let bad = dir.path().join("bad.txt");
    fs::write(&bad, "2\n1 2\n3\n").unwrap();
    let (five_jobs, many) = (data("five_jobs.txt"), data("n10_seed42.txt"));
    let cases: Vec<Vec<&str>> = vec![
        vec![
            "solve", "--algo", "exact", "--delta", "9", "--in", &five_jobs,
        ],
        vec![
            "solve",
            "--algo",
            "oracle",
            "--delta",
            "1",
            "--in",
            path_str(&bad),
        ],
        vec![
            "solve",
            "--algo",
            "exact",
            "--delta",
            "1",
            "--in",
            "/nonexistent/file",
        ],
        vec![
            "solve", "--algo", "exact", "--delta", "2", "--budget", "3", "--in", &five_jobs,
        ],
        vec!["export-mip", "--delta", "1", "--in", &many],
    ];
    for args in cases {
        let o = recsmsp(&args);
        assert!(!o.status.success(), "{args:?}");
        let err = String::from_utf8(o.stderr).unwrap();
        assert_eq!(err.lines().count(), 1, "{args:?}: {err}");
        assert!(err.starts_with("error: "));
    }
}

#[test]
fn unknown_algorithm_is_rejected() {
    let o = recsmsp(&[
        "solve",
        "--algo",
        "milp",
        "--delta",
        "1",
        "--in",
        &data("five_jobs.txt"),
    ]);
    assert!(!o.status.success());
}
