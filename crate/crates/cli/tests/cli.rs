//! End-to-end tests of the `epseq` binary: golden output, exit codes, and
//! text/jsonl parity.

use std::process::{Command, Output};

fn epseq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_epseq"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = epseq(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).expect("utf-8 output")
}

fn exit_code(args: &[&str]) -> i32 {
    epseq(args).status.code().expect("no signal")
}

#[test]
fn table_jsonl_matches_golden_file() {
    let out = epseq(&["table", "--max", "20", "--format", "jsonl"]);
    assert!(out.status.success());
    let golden: &[u8] = include_bytes!("golden/table_max20.jsonl");
    assert_eq!(
        out.stdout, golden,
        "table --max 20 --format jsonl must be byte-identical"
    );
}

#[test]
fn verify_all_at_order_100_exits_clean() {
    let out = epseq(&["verify", "--suite", "all", "--max", "100"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("verify:"));
    assert!(!text.contains("\nFAIL"), "no failing checks expected");
    // the d' discrepancy for p >= 5 is reported, not failed
    assert!(text.contains("NOTE identity: d'_5"));
}

#[test]
fn text_and_jsonl_carry_the_same_table() {
    let text = stdout(&["table", "--max", "12"]);
    let jsonl = stdout(&["table", "--max", "12", "--format", "jsonl"]);
    let text_rows: Vec<&str> = text.lines().collect();
    let json_rows: Vec<serde_json::Value> = jsonl
        .lines()
        .map(|line| serde_json::from_str(line).unwrap())
        .collect();
    assert_eq!(text_rows.len(), 13);
    assert_eq!(json_rows.len(), 13);

    for (line, record) in text_rows.iter().zip(&json_rows) {
        let mut columns = line.split("  ");
        let l: u64 = columns.next().unwrap().parse().unwrap();
        let epsilon = columns.next().unwrap();
        assert_eq!(record["l"].as_u64().unwrap(), l);
        assert_eq!(record["epsilon"].as_str().unwrap(), epsilon);

        // reassemble the factorization column from the jsonl record
        let mut parts: Vec<String> = Vec::new();
        if record["sign"].as_i64().unwrap() < 0 {
            parts.push("-1".into());
        }
        for factor in record["factors"].as_array().unwrap() {
            let p = factor["p"].as_str().unwrap();
            let e = factor["e"].as_i64().unwrap();
            parts.push(if e == 1 {
                p.to_string()
            } else {
                format!("{p}^{e}")
            });
        }
        match columns.next() {
            Some(column) => assert_eq!(column, parts.join(" · ")),
            None => assert!(parts.is_empty(), "row {l} lost its factor column"),
        }
    }
}

#[test]
fn jsonl_round_trips_through_the_rational_parser() {
    use epseq::exact::Rational;
    let jsonl = stdout(&["table", "--max", "15", "--format", "jsonl"]);
    for line in jsonl.lines() {
        let record: serde_json::Value = serde_json::from_str(line).unwrap();
        let eps: Rational = record["epsilon"].as_str().unwrap().parse().unwrap();
        assert_eq!(eps.to_string(), record["epsilon"].as_str().unwrap());
        // the factor list reconstructs the value
        let mut product = Rational::from(record["sign"].as_i64().unwrap());
        for factor in record["factors"].as_array().unwrap() {
            let p: Rational = factor["p"].as_str().unwrap().parse().unwrap();
            product = product * p.pow(factor["e"].as_i64().unwrap());
        }
        assert_eq!(product, eps);
    }
}

#[test]
fn methods_emit_identical_tables() {
    let series = stdout(&["table", "--max", "14"]);
    let recur = stdout(&["table", "--max", "14", "--method", "recur"]);
    let compsum = stdout(&["table", "--max", "14", "--method", "compsum"]);
    assert_eq!(series, recur);
    assert_eq!(series, compsum);
}

#[test]
fn command_surface_examples() {
    assert_eq!(stdout(&["table", "--max", "0"]), "0  1\n");
    let table3 = stdout(&["table", "--max", "3"]);
    assert!(table3.lines().any(|l| l == "3  1/1512  2^-3 · 3^-3 · 7^-1"));

    assert_eq!(stdout(&["value", "--l", "2"]), "-1/180\n");
    assert_eq!(
        stdout(&["value", "--l", "5", "--method", "compsum"]),
        "263/14968800\n"
    );
    assert_eq!(stdout(&["valuation", "--p", "5", "--l", "13"]), "-5\n");
    assert_eq!(stdout(&["dprime", "--p", "2", "--k", "12"]), "2\n");
    assert_eq!(stdout(&["dprime", "--p", "3", "--k", "9"]), "2\n");
    assert_eq!(stdout(&["dprime", "--p", "5", "--k", "1"]), "1\n");
    assert_eq!(
        stdout(&["bounds", "--p", "3", "--k", "27"]),
        "lower=3 upper=3\n"
    );
    assert_eq!(
        stdout(&["bounds", "--p", "2", "--k", "16"]),
        "lower=2 upper=4\n"
    );
    assert_eq!(stdout(&["antypes", "--n", "2"]), "12\n");
    assert_eq!(
        stdout(&["factor", "--l", "4"]),
        "-1 · 2^-4 · 3^-4 · 5^-2 · 7^-1 · 23\n"
    );
    assert_eq!(stdout(&["factor", "--", "-8/27"]), "-1 · 2^3 · 3^-3\n");
}

#[test]
fn antypes_rows_with_log_check() {
    let rows = stdout(&["antypes", "--max", "3", "--log-check"]);
    let lines: Vec<&str> = rows.lines().collect();
    assert_eq!(lines.len(), 3);
    assert!(lines[0].starts_with("1  2  log-check ok"));
    assert!(lines[1].starts_with("2  12  log-check ok"));
    assert!(lines[2].starts_with("3  32  log-check ok"));
}

#[test]
fn usage_errors_exit_2() {
    let out = epseq(&["dprime", "--p", "2", "--k", "0"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("d_p(0) = infinity"));

    assert_eq!(exit_code(&["dprime", "--p", "9", "--k", "4"]), 2);
    assert_eq!(exit_code(&["bounds", "--p", "4", "--k", "4"]), 2);
    assert_eq!(exit_code(&["valuation", "--p", "5"]), 2);
    assert_eq!(
        exit_code(&["valuation", "--p", "5", "--l", "3", "--max", "9"]),
        2
    );
    assert_eq!(exit_code(&["factor"]), 2);
    assert_eq!(exit_code(&["antypes"]), 2);
    assert_eq!(exit_code(&["value", "--l", "80", "--method", "compsum"]), 2);
    assert_eq!(
        exit_code(&["table", "--max", "80", "--method", "compsum"]),
        2
    );
    assert_eq!(exit_code(&["factor", "not-a-rational"]), 2);
    assert_eq!(exit_code(&["factor", "0"]), 2);
    assert_eq!(exit_code(&["no-such-command"]), 2);
}

#[test]
fn verify_seed_and_fail_fast_flags_are_accepted() {
    assert_eq!(
        exit_code(&[
            "verify",
            "--suite",
            "v2",
            "--max",
            "12",
            "--fail-fast",
            "--seed",
            "9"
        ]),
        0
    );
    assert_eq!(
        exit_code(&["verify", "--suite", "vp", "--max", "30", "--p", "7"]),
        0
    );
    assert_eq!(
        exit_code(&["verify", "--suite", "vp", "--max", "30", "--p", "2"]),
        2
    );
}
