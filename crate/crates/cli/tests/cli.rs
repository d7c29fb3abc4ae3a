//! End-to-end tests against the compiled binary.

use std::path::Path;
use std::process::{Command, Output};

use serde::Deserialize;

fn picod(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_picod"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "stdout is not JSON ({e}): {}",
            String::from_utf8_lossy(&out.stdout)
        )
    })
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

#[test]
fn construct_emits_valid_scheme() {
    let out = picod(&["construct", "10", "2", "1"]);
    assert_eq!(code(&out), 0);
    let json = stdout_json(&out);
    assert_eq!(json["scheme"]["ell"], 3);
    assert_eq!(json["verdict"]["status"], "valid");
}

#[test]
fn construct_rejects_infeasible_with_exit_2() {
    let out = picod(&["construct", "5", "1", "1"]);
    assert_eq!(code(&out), 2);
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("infeasible"), "stderr: {stderr}");
    assert!(stderr.contains("s=1"));
}

#[test]
fn construct_one_factor_sum() {
    let out = picod(&["construct", "6", "3", "1"]);
    assert_eq!(code(&out), 0);
    let json = stdout_json(&out);
    assert_eq!(json["scheme"]["ell"], 1);
    assert_eq!(json["scheme"]["rows"][0], serde_json::json!([1, 4]));
}

#[test]
fn parameter_errors_exit_3() {
    assert_eq!(code(&picod(&["construct", "1", "0", "1"])), 3);
    assert_eq!(code(&picod(&["construct", "6", "9", "1"])), 3);
    assert_eq!(code(&picod(&["construct", "six", "1", "1"])), 3);
}

#[test]
fn validate_round_trip_and_tampering() {
    let dir = std::env::temp_dir().join(format!("picod-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("scheme.json");
    let out = picod(&["construct", "8", "2", "1", "--out", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0);

    let out = picod(&["validate", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(stdout_json(&out)["status"], "valid");

    // Appending a plaintext row makes some user decode a second message.
    let mut scheme: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    scheme["rows"].as_array_mut().unwrap().push(serde_json::json!([1]));
    scheme["ell"] = serde_json::json!(3);
    let tampered = dir.join("extra-row.json");
    std::fs::write(&tampered, scheme.to_string()).unwrap();
    let out = picod(&["validate", tampered.to_str().unwrap()]);
    assert_eq!(code(&out), 1);
    assert_eq!(stdout_json(&out)["status"], "privacy-violation");

    // Deleting a row starves a group of its only equation.
    let mut scheme: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    scheme["rows"].as_array_mut().unwrap().pop();
    scheme["ell"] = serde_json::json!(1);
    let truncated = dir.join("missing-row.json");
    std::fs::write(&truncated, scheme.to_string()).unwrap();
    let out = picod(&["validate", truncated.to_str().unwrap()]);
    assert_eq!(code(&out), 1);
    assert_eq!(stdout_json(&out)["status"], "decode-failure");
}

#[test]
fn validate_entropy_report_and_exhaustive_route() {
    let dir = std::env::temp_dir().join(format!("picod-cli-ent-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("scheme.json");
    picod(&["construct", "6", "2", "1", "--out", path.to_str().unwrap()]);

    let report = dir.join("entropy.csv");
    let out = picod(&[
        "validate",
        path.to_str().unwrap(),
        "--exhaustive",
        "--entropy-report",
        report.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    let csv = std::fs::read_to_string(&report).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("user,message,entropy_bits"));
    for line in lines {
        let fields: Vec<&str> = line.split(',').collect();
        assert_eq!(fields.len(), 3);
        let bits: f64 = fields[2].parse().unwrap();
        assert!(bits == 0.0 || bits == 1.0, "linear code leaks only whole bits: {line}");
    }
}

#[test]
fn optimal_exit_codes() {
    let out = picod(&["optimal", "6", "2", "1", "--ell-max", "3"]);
    assert_eq!(code(&out), 0);
    let json = stdout_json(&out);
    assert_eq!(json["status"], "found");
    assert_eq!(json["ell_star"], 2);

    let out = picod(&["optimal", "5", "3", "1"]);
    assert_eq!(code(&out), 2);
    assert_eq!(stdout_json(&out)["status"], "infeasible-linear");

    let out = picod(&["optimal", "6", "2", "1", "--ell-max", "1"]);
    assert_eq!(code(&out), 1);
    assert_eq!(stdout_json(&out)["status"], "inconclusive");

    assert_eq!(code(&picod(&["optimal", "12", "2", "1"])), 4);
    assert_eq!(code(&picod(&["optimal", "10", "2", "1", "--ell-max", "5"])), 4);
}

#[test]
fn factor_reports_witness() {
    let out = picod(&["factor", "6", "3", "1"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout_json(&out)["witness"], serde_json::json!([1, 4]));

    let out = picod(&["factor", "5", "3", "1"]);
    assert_eq!(code(&out), 1);
    assert_eq!(stdout_json(&out)["witness"], serde_json::Value::Null);

    let out = picod(&["factor", "2", "1", "1"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout_json(&out)["witness"], serde_json::json!([1, 2]));
}

/// Mirror of the binary's row type, for the round-trip check.
#[derive(Debug, PartialEq, Deserialize)]
struct Row {
    m: usize,
    s: usize,
    h: usize,
    g: usize,
    n: usize,
    one_factor: bool,
    case: String,
    lin_lower: Option<usize>,
    lin_upper: Option<usize>,
    constructed_ell: Option<usize>,
    oracle_ell: Option<usize>,
    verdict: String,
}

fn read_rows(path: &Path) -> Vec<Row> {
    csv::Reader::from_path(path)
        .unwrap()
        .deserialize()
        .collect::<Result<_, _>>()
        .unwrap()
}

#[test]
fn sweep_csv_header_and_round_trip() {
    let dir = std::env::temp_dir().join(format!("picod-cli-sweep-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("sweep.csv");
    let out = picod(&[
        "sweep",
        "--m-range",
        "4..12",
        "--s-range",
        "2..2",
        "--oracle-cap",
        "3",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));

    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with(
        "m,s,h,g,n,one_factor,case,lin_lower,lin_upper,constructed_ell,oracle_ell,verdict\n"
    ));

    let rows = read_rows(&path);
    assert_eq!(rows.len(), 9);
    // Writing the parsed rows back reproduces the file bit-exactly.
    let mut writer = csv::Writer::from_writer(Vec::new());
    #[derive(serde::Serialize)]
    struct RowOut<'a> {
        m: usize,
        s: usize,
        h: usize,
        g: usize,
        n: usize,
        one_factor: bool,
        case: &'a str,
        lin_lower: Option<usize>,
        lin_upper: Option<usize>,
        constructed_ell: Option<usize>,
        oracle_ell: Option<usize>,
        verdict: &'a str,
    }
    for r in &rows {
        writer
            .serialize(RowOut {
                m: r.m,
                s: r.s,
                h: r.h,
                g: r.g,
                n: r.n,
                one_factor: r.one_factor,
                case: &r.case,
                lin_lower: r.lin_lower,
                lin_upper: r.lin_upper,
                constructed_ell: r.constructed_ell,
                oracle_ell: r.oracle_ell,
                verdict: &r.verdict,
            })
            .unwrap();
    }
    let rewritten = String::from_utf8(writer.into_inner().unwrap()).unwrap();
    assert_eq!(rewritten, text);

    // The landscape itself: the upper bound dips at m = 12 after peaking at 11.
    let upper = |m: usize| rows.iter().find(|r| r.m == m).unwrap().lin_upper;
    assert_eq!((upper(10), upper(11), upper(12)), (Some(3), Some(4), Some(3)));
    assert_eq!(rows[0].case, "tight-it"); // m=4: s >= m/2
    // Oracle columns appear only within caps (m <= 10 here), and agree with
    // the constructed lengths when the band is tight.
    for r in &rows {
        if r.m > 10 {
            assert_eq!(r.oracle_ell, None);
        }
        if let (Some(o), Some(c)) = (r.oracle_ell, r.constructed_ell) {
            assert!(o <= c && c - o <= 1, "gap violated at m={}", r.m);
        }
    }
}

#[test]
fn sweep_infeasible_rows_for_odd_m_s1() {
    let out = picod(&["sweep", "--m-range", "5..9", "--s-range", "1..1", "--format", "csv"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8_lossy(&out.stdout);
    for line in text.lines().skip(1) {
        let m: usize = line.split(',').next().unwrap().parse().unwrap();
        let infeasible = line.contains("infeasible");
        assert_eq!(infeasible, m % 2 == 1, "line: {line}");
    }
}

#[test]
fn sweep_g3_rows_are_tight() {
    let out = picod(&["sweep", "--m-range", "6..12", "--s-range", "3..3", "--h-range", "3..3"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8_lossy(&out.stdout);
    for line in text.lines().skip(1) {
        let fields: Vec<&str> = line.split(',').collect();
        let g: usize = fields[3].parse().unwrap();
        if g >= 3 {
            assert_eq!(fields[6], "tight-it", "line: {line}");
        }
    }
}

#[test]
fn sweep_json_format() {
    let out = picod(&["sweep", "--m-range", "6..6", "--format", "json"]);
    assert_eq!(code(&out), 0);
    let rows: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let rows = rows.as_array().unwrap();
    assert_eq!(rows.len(), 6); // s = 0..5, h = 1
    assert_eq!(rows[0]["case"], "unclassified"); // s = 0
}
