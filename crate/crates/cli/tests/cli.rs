//! End-to-end tests of the command-line surface: exact outputs, exit
//! codes, and the JSON wire formats.

use std::process::{Command, Output};

fn umbral(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_umbral"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("utf-8 output")
}

fn exit_code(output: &Output) -> i32 {
    output.status.code().expect("no signal")
}

#[test]
fn compute_mixed_degree_zero() {
    let out = umbral(&[
        "compute", "--family", "mixed", "-n", "0", "-r", "5", "-k", "-3",
    ]);
    assert_eq!(exit_code(&out), 0);
    assert_eq!(stdout(&out), "1\n");
}

#[test]
fn compute_mixed_degree_one_plain_and_json() {
    let out = umbral(&[
        "compute", "--family", "mixed", "-n", "1", "-r", "2", "-k", "1",
    ]);
    assert_eq!(stdout(&out), "x - 1/2\n");
    let out = umbral(&[
        "compute", "--family", "mixed", "-n", "1", "-r", "2", "-k", "1", "--format", "json",
    ]);
    assert_eq!(
        stdout(&out),
        "{\"var\":\"x\",\"coeffs\":[\"-1/2\",\"1\"]}\n"
    );
}

#[test]
fn compute_json_round_trips_through_schema() {
    let out = umbral(&[
        "compute", "--family", "mixed", "-n", "4", "-r", "-2", "-k", "2", "--format", "json",
    ]);
    let poly: umbral::Poly = serde_json::from_str(stdout(&out).trim()).expect("schema parses");
    assert_eq!(poly.degree(), Some(4));
    assert_eq!(serde_json::to_string(&poly).unwrap() + "\n", stdout(&out));
}

#[test]
fn compute_evaluates_at_point() {
    // x^2 + x + 1/6 at 1/2 is 11/12.
    let out = umbral(&[
        "compute", "--family", "mixed", "-n", "2", "-r", "0", "-k", "1", "--at", "1/2",
    ]);
    assert_eq!(stdout(&out), "11/12\n");
}

#[test]
fn compute_stirling_value() {
    let out = umbral(&["compute", "--family", "stirling2", "-n", "4", "-m", "2"]);
    assert_eq!(stdout(&out), "7\n");
    // Signed first kind changes sign with parity: s(4, 2) = 11.
    let out = umbral(&["compute", "--family", "stirling1", "-n", "4", "-m", "2"]);
    assert_eq!(stdout(&out), "11\n");
    let out = umbral(&["compute", "--family", "stirling1", "-n", "4", "-m", "1"]);
    assert_eq!(stdout(&out), "-6\n");
}

#[test]
fn compute_rejects_bad_params() {
    let out = umbral(&["compute", "--family", "mixed", "-n", "-1"]);
    assert_eq!(exit_code(&out), 2);
    let out = umbral(&[
        "compute",
        "--family",
        "frobenius-euler",
        "-n",
        "1",
        "-s",
        "1",
        "--lambda",
        "1",
    ]);
    assert_eq!(exit_code(&out), 2);
    let out = umbral(&[
        "compute",
        "--family",
        "stirling2",
        "-n",
        "3",
        "-m",
        "1",
        "--at",
        "2",
    ]);
    assert_eq!(exit_code(&out), 2);
    let out = umbral(&["compute", "--family", "stirling2", "-n", "3"]);
    assert_eq!(exit_code(&out), 2);
}

#[test]
fn table_mixed_matches_shifted_bernoulli() {
    let out = umbral(&[
        "table",
        "--family",
        "mixed",
        "--n-range",
        "0..2",
        "--r-range",
        "0..0",
        "--k-range",
        "1..1",
    ]);
    assert_eq!(
        stdout(&out),
        "n=0 r=0 k=1\t1\nn=1 r=0 k=1\tx + 1/2\nn=2 r=0 k=1\tx^2 + x + 1/6\n"
    );
}

#[test]
fn table_stirling_triangle_csv() {
    let out = umbral(&[
        "table",
        "--family",
        "stirling2",
        "--n-range",
        "0..4",
        "--format",
        "csv",
    ]);
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    // Header plus the 15 triangle entries for n <= 4.
    assert_eq!(lines.len(), 16);
    assert_eq!(lines[0], "n,m,value");
    assert!(lines.contains(&"4,2,7"));
    assert!(lines.contains(&"3,3,1"));
}

#[test]
fn table_single_cell_matches_compute() {
    let table = umbral(&[
        "table",
        "--family",
        "higher-bernoulli",
        "--n-range",
        "3..3",
        "--r-range",
        "2..2",
    ]);
    let compute = umbral(&[
        "compute",
        "--family",
        "higher-bernoulli",
        "-n",
        "3",
        "-r",
        "2",
    ]);
    let row = stdout(&table);
    let value = row.split_once('\t').expect("tab separated").1;
    assert_eq!(value, stdout(&compute));
}

#[test]
fn table_rejects_empty_range() {
    let out = umbral(&["table", "--family", "mixed", "--n-range", "3..1"]);
    assert_eq!(exit_code(&out), 2);
}

#[test]
fn table_json_shape() {
    let out = umbral(&[
        "table",
        "--family",
        "poly-bernoulli",
        "--n-range",
        "1..1",
        "--k-range",
        "2..2",
        "--format",
        "json",
    ]);
    let value: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    let rows = value["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 1);
    assert_eq!(rows[0]["n"], 1);
    assert_eq!(rows[0]["k"], 2);
    assert_eq!(rows[0]["value"]["coeffs"], serde_json::json!(["1/4", "1"]));
}

#[test]
fn series_polylog_collapses_at_index_one() {
    let out = umbral(&["series", "--gf", "polylog", "-k", "1", "--precision", "6"]);
    assert_eq!(
        stdout(&out),
        "{\"var\":\"t\",\"precision\":6,\"coeffs\":[\"0\",\"1\",\"0\",\"0\",\"0\",\"0\"]}\n"
    );
}

#[test]
fn series_bernoulli_kernel_prefix() {
    let out = umbral(&["series", "--gf", "bernoulli-kernel", "--precision", "4"]);
    assert_eq!(
        stdout(&out),
        "{\"var\":\"t\",\"precision\":4,\"coeffs\":[\"1\",\"-1/2\",\"1/12\",\"0\"]}\n"
    );
}

#[test]
fn series_mixed_g_is_normalized() {
    let out = umbral(&[
        "series",
        "--gf",
        "mixed-g",
        "-r",
        "0",
        "-k",
        "3",
        "--precision",
        "5",
    ]);
    let series: umbral::Series = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(series.coeff(0), umbral::Rat::one());
}

#[test]
fn series_rejects_zero_precision() {
    let out = umbral(&["series", "--gf", "polylog", "-k", "1", "--precision", "0"]);
    assert_eq!(exit_code(&out), 2);
}

#[test]
fn verify_unknown_identity_exits_two() {
    let out = umbral(&["verify", "bogus-id"]);
    assert_eq!(exit_code(&out), 2);
}

#[test]
fn verify_list_names_registry() {
    let out = umbral(&["verify", "--list"]);
    assert_eq!(exit_code(&out), 0);
    let text = stdout(&out);
    for id in ["eq12", "prop1", "thm5-printed", "eq51"] {
        assert!(text.contains(id), "missing {id}");
    }
}
