use std::io::Write;
use std::process::{Command, Output, Stdio};

use hypspinor::emit::{rows_from_csv, BlockRow};
use hypspinor::moduli::classify_sweep;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hypspinor"))
        .args(args)
        .output()
        .unwrap()
}

fn run_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_hypspinor"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn verify_algebra_passes_and_fault_fails() {
    let o = run(&["verify", "--suite", "algebra", "--Lmax", "6"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let report = json(&o);
    assert!(report["checks"].as_array().unwrap().iter().all(|c| c["passed"] == true));

    let o = run(&[
        "verify",
        "--suite",
        "algebra",
        "--Lmax",
        "6",
        "--inject-fault",
        "corrupt-opb",
        "--text",
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("claim-identities: FAIL"));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(run(&["radial", "--K", "7", "--L", "8"]).status.code(), Some(2));
    assert_eq!(
        run(&["radial", "--K", "0", "--L", "4", "--tol", "-1"]).status.code(),
        Some(2)
    );
    assert_eq!(run(&["verify", "--suite", "nonsense"]).status.code(), Some(2));
    assert_eq!(run(&["boundary", "--K", "0", "--L", "-3"]).status.code(), Some(2));
    let o = Command::new(env!("CARGO_BIN_EXE_hypspinor"))
        .args(["indicial"])
        .env("HYPSPINOR_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn boundary_json() {
    let o = run(&["boundary", "--K", "4", "--L", "8"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["c_inf"], "21");
    assert!((v["c_inf_numeric"].as_f64().unwrap() - 21.0).abs() < 1e-4 * 21.0);
    assert_eq!(v["in_top_eigenspace"], true);
}

#[test]
fn radial_csv_layout() {
    let o = run(&["radial", "--K=-2", "--L", "6", "--samples", "5", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "# block (-2,6) c_inf 7/2 A4 1");
    assert_eq!(lines[1], "r,a4,a2,a0,a_neg2,a_neg4,dirac_residual,constraint_residual");
    assert_eq!(lines.len(), 2 + 5);
    let last: Vec<f64> = lines[6].split(',').map(|x| x.parse().unwrap()).collect();
    assert_eq!(last[0], 12.0);
    assert!(last[7] < 1e-8);
}

#[test]
fn blocks_csv_round_trips() {
    let o = run(&["blocks", "--Lmax", "6", "--Kmax", "10", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let rows: Vec<BlockRow> = rows_from_csv(&stdout(&o)).unwrap();
    let want: Vec<BlockRow> = classify_sweep(6, 10).iter().map(BlockRow::from).collect();
    assert_eq!(rows, want);
}

#[test]
fn indicial_summary() {
    let v = json(&run(&["indicial", "--Lmax", "8"]));
    assert_eq!(v["min_eigenvalue"], "6");
    assert_eq!(v["lambda_min"], "0");
    assert_eq!(v["delta_plus"], 4.0);
    assert_eq!(v["decay_at_infinity"], "4");
}

#[test]
fn bland_and_tangent_filter_stdin() {
    let input =
        r#"[{"K":-6,"L":4,"re":1.0,"im":0.0},{"K":0,"L":8,"re":2.0,"im":-1.0},{"K":-8,"L":4,"re":0.5,"im":0.0}]"#;
    let bland = json(&run_stdin(&["bland", "--input", "-"], input));
    assert_eq!(bland, serde_json::json!([{"K": 0, "L": 8, "re": 2.0, "im": -1.0}]));
    let tangent = json(&run_stdin(&["tangent", "--input", "-"], input));
    let ks: Vec<i64> = tangent
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["K"].as_i64().unwrap())
        .collect();
    assert_eq!(ks, vec![-8, -6]);

    let bad = run_stdin(&["bland", "--input", "-"], r#"[{"K":6,"L":4,"re":1.0,"im":0.0}]"#);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn out_flag_writes_file() {
    let path = std::env::temp_dir().join(format!("hypspinor-cli-{}.json", std::process::id()));
    let o = run(&["boundary", "--K", "0", "--L", "4", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    std::fs::remove_file(&path).unwrap();
    assert_eq!(v["c_inf"], "5/2");
}
