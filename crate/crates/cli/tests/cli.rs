use std::process::{Command, Output};

use serde_json::Value as Json;
use thermowit_cli::record::read_csv;

const GAS: [&str; 6] = ["--length", "10um", "--species", "sodium-23", "--n", "7e5"];

fn thermowit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_thermowit"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn with_gas<'a>(head: &[&'a str], tail: &[&'a str]) -> Vec<&'a str> {
    head.iter().chain(GAS.iter()).chain(tail.iter()).copied().collect()
}

fn stdout(out: &Output) -> String {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn csv_and_json_round_trip_to_the_same_values() {
    let sweep = ["--var", "T", "--from", "1uK", "--to", "100uK", "--points", "25", "--scale", "log", "--m", "185"];
    let csv_text = stdout(&thermowit(&with_gas(&["scan", "--format", "csv"], &sweep)));
    let json_text = stdout(&thermowit(&with_gas(&["scan", "--format", "json"], &sweep)));
    let (headers, rows) = read_csv(&csv_text).unwrap();
    let json: Json = serde_json::from_str(&json_text).unwrap();
    let json_rows = json["rows"].as_array().unwrap();
    let columns = json["meta"]["columns"].as_array().unwrap();
    assert_eq!(rows.len(), 25);
    assert_eq!(json_rows.len(), 25);
    assert_eq!(headers.len(), columns.len());
    for (csv_row, json_row) in rows.iter().zip(json_rows) {
        for ((cell, header), col) in csv_row.iter().zip(&headers).zip(columns) {
            let name = col["name"].as_str().unwrap();
            assert!(header.starts_with(name));
            let value = &json_row[name];
            match value {
                Json::Null => assert_eq!(cell, ""),
                Json::String(s) => assert_eq!(cell, s),
                Json::Number(n) => assert_eq!(cell.parse::<f64>().unwrap(), n.as_f64().unwrap(), "{name}"),
                other => panic!("unexpected {other}"),
            }
        }
    }
}

#[test]
fn repeated_runs_are_byte_identical() {
    for format in ["csv", "json", "table"] {
        let args = with_gas(&["verdict", "--format", format, "--no-meta"], &["--m", "185", "--t", "10uK"]);
        assert_eq!(thermowit(&args).stdout, thermowit(&args).stdout, "{format}");
    }
    let a = thermowit(&["reproduce", "dimensions-table", "--format", "json", "--no-meta"]);
    let b = thermowit(&["reproduce", "dimensions-table", "--format", "json", "--no-meta"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn metadata_header_only_without_no_meta() {
    let with = stdout(&thermowit(&["reproduce", "ketterle", "--format", "csv"]));
    let without = stdout(&thermowit(&["reproduce", "ketterle", "--format", "csv", "--no-meta"]));
    assert!(with.starts_with("# thermowit"));
    assert!(!without.contains("generated_unix"));
    assert_eq!(with.lines().skip(1).collect::<Vec<_>>(), without.lines().collect::<Vec<_>>());
}

#[test]
fn exit_codes() {
    assert_eq!(thermowit(&with_gas(&["tcrit"], &[])).status.code(), Some(0));
    // no finite condensation in two dimensions
    assert_eq!(thermowit(&with_gas(&["tcrit", "--d", "2"], &[])).status.code(), Some(1));
    assert_eq!(thermowit(&with_gas(&["tcrit", "--bogus"], &[])).status.code(), Some(2));
    assert_eq!(thermowit(&["ttrans", "--length", "10uK", "--species", "sodium-23", "--n", "5"]).status.code(), Some(2));
    assert_eq!(thermowit(&["reproduce", "moon"]).status.code(), Some(2));
    assert_eq!(thermowit(&with_gas(&["ttrans"], &["--species", "unobtainium-1"])).status.code(), Some(2));
    assert_eq!(thermowit(&["ttrans", "--length", "10um", "--species", "unobtainium-1", "--n", "5"]).status.code(), Some(1));

    let verdict = |t: &str| thermowit(&with_gas(&["verdict", "--exit-on-verdict"], &["--m", "185", "--t", t]));
    assert_eq!(verdict("10uK").status.code(), Some(0));
    assert_eq!(verdict("30uK").status.code(), Some(3));
    let plain = thermowit(&with_gas(&["verdict"], &["--m", "185", "--t", "30uK"]));
    assert_eq!(plain.status.code(), Some(0));
}

#[test]
fn usage_errors_go_to_stderr() {
    let out = thermowit(&["scan", "--length", "10um", "--mass", "23u", "--n", "10", "--var", "T", "--from", "0", "--to", "1", "--scale", "log"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    assert!(String::from_utf8_lossy(&out.stderr).contains("Usage"));
}

#[test]
fn malformed_scenario_names_missing_mass() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("broken.json");
    std::fs::write(&path, r#"{ "gas": { "dimension": 3, "box_length": "10um", "particle_number": 7e5 }, "partition": 185 }"#).unwrap();
    let out = thermowit(&["run", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("gas.mass"));
}

#[test]
fn scenario_partition_sweep_writes_400_monotone_rows() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sweep.json");
    let out_path = dir.path().join("sweep.csv");
    std::fs::write(
        &path,
        r#"{
  "gas": { "dimension": 3, "box_length": "10um", "species": "sodium-23", "particle_number": 7e5 },
  "partition": 185,
  "sweep": { "variable": "M", "from": 1, "to": 400, "points": 400, "scale": "linear" }
}"#,
    )
    .unwrap();
    let out = thermowit(&["run", path.to_str().unwrap(), "--format", "csv", "--out", out_path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let (headers, rows) = read_csv(&std::fs::read_to_string(&out_path).unwrap()).unwrap();
    assert_eq!(rows.len(), 400);
    let m_col = headers.iter().position(|h| h == "partition_m(1)").unwrap();
    let t_col = headers.iter().position(|h| h == "t_trans(K)").unwrap();
    let t: Vec<f64> = rows.iter().map(|r| r[t_col].parse().unwrap()).collect();
    assert!(t.windows(2).all(|w| w[1] > w[0]));
    assert_eq!(rows[0][m_col].parse::<f64>().unwrap(), 1.0);
    assert_eq!(rows[399][m_col].parse::<f64>().unwrap(), 400.0);
}

#[test]
fn ketterle_scenario_file_matches_reproduction() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("ketterle.json");
    std::fs::write(
        &path,
        r#"{ "gas": { "box_length": 1e-5, "mass": "22.98977u", "particle_number": 700000 },
            "partition": 185, "measurement": { "temperature": "2e-5 K" } }"#,
    )
    .unwrap();
    let json: Json = serde_json::from_str(&stdout(&thermowit(&["run", path.to_str().unwrap(), "--format", "json", "--no-meta"]))).unwrap();
    let row = &json["rows"][0];
    let t = row["t_trans"].as_f64().unwrap();
    assert!((1.9e-5..=2.1e-5).contains(&t));
    assert!((row["entanglement_length"].as_f64().unwrap() / 5.4054e-8 - 1.0).abs() < 1e-4);
    // 2e-5 K sits just below T_trans(185)
    assert_eq!(row["verdict"], "Entangled");
}

#[test]
fn one_dimensional_ttrans_is_finite() {
    let json: Json =
        serde_json::from_str(&stdout(&thermowit(&with_gas(&["ttrans", "--d", "1", "--format", "json"], &[])))).unwrap();
    let row = &json["rows"][0];
    let t = row["t_trans"].as_f64().unwrap();
    assert!(t.is_finite() && t > 0.0);
    assert!(row["t_crit"].is_null());
    // auto partition: M = N in one dimension
    assert_eq!(row["partition_m"].as_f64().unwrap(), 7e5);
}

#[test]
fn invert_m_reports_185() {
    let json: Json =
        serde_json::from_str(&stdout(&thermowit(&with_gas(&["invert-m", "--format", "json"], &["--t", "20uK"])))).unwrap();
    assert_eq!(json["rows"][0]["partition_nearest"], 185);
}

#[test]
fn verify_suite_passes() {
    let out = stdout(&thermowit(&["verify", "--format", "csv", "--no-meta"]));
    let (_, rows) = read_csv(&out).unwrap();
    assert!(rows.len() >= 10);
    assert!(rows.iter().all(|r| r[1] == "pass"), "{out}");
}
