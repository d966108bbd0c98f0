use std::process::{Command, Output};

use serde_json::Value;

fn beilinson(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_beilinson"))
        .args(args)
        .env_remove("BEILINSON_THREADS")
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let out = beilinson(&all);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid json")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn hochschild_of_the_line() {
    let v = json(&["hochschild", "--algebra", "poly:1", "--weight-max", "4"]);
    let hh = &v["hh"];
    for w in 0..=4 {
        assert_eq!(hh[format!("(0,{w})")], 1);
        assert_eq!(hh[format!("(1,{w})")], if w > 0 { 1 } else { 0 });
    }
    assert_eq!(v["algebra"], "poly:1");
}

#[test]
fn hkr_flag_passes_for_polynomials() {
    let out = beilinson(&["hochschild", "--algebra", "poly:2", "--weight-max", "3", "--hkr"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn csv_and_ascii_agree() {
    let args = ["hochschild", "--algebra", "poly:2", "--weight-max", "2"];
    let csv_out = stdout(&beilinson(&[&args[..], &["--format", "csv"]].concat()));
    let mut lines = csv_out.lines();
    assert_eq!(lines.next(), Some("n,w,hh"));
    let rows: Vec<Vec<String>> = lines.map(|l| l.split(',').map(str::to_string).collect()).collect();
    let v = json(&args);
    for row in &rows {
        assert_eq!(v["hh"][format!("({},{})", row[0], row[1])].to_string(), row[2]);
    }
    // the text table is the same data as a degree-by-weight grid
    let ascii = stdout(&beilinson(&args));
    let grid: Vec<Vec<&str>> = ascii.lines().skip(2).map(|l| l.split_whitespace().collect()).collect();
    for row in &rows {
        let (n, w): (usize, usize) = (row[0].parse().unwrap(), row[1].parse().unwrap());
        assert_eq!(grid[n][w + 1], row[2]);
    }
}

#[test]
fn periodic_of_a_point_alternates() {
    let v = json(&["cyclic", "--algebra", "poly:0", "--weight-max", "0", "--variant", "hp", "--degrees", "-3..3"]);
    for n in -3..=3i64 {
        assert_eq!(v["dims"][format!("({n},0)")], if n % 2 == 0 { 1 } else { 0 });
    }
}

#[test]
fn verify_exits_zero_and_writes_a_report() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = beilinson(&[
        "verify",
        "--algebra",
        "poly:1",
        "--weight-max",
        "4",
        "--u",
        "0..2",
        "--report",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let report: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(report["passed"], true);
    assert_eq!(report["beilinson"].as_array().unwrap().len(), 3);
    assert_eq!(report["hp"][1]["les_exact"], true);
}

#[test]
fn unsupported_and_malformed_inputs_exit_three() {
    let out = beilinson(&["verify", "--algebra", "trunc:x^2"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("polynomial"));

    let out = beilinson(&["hochschild", "--algebra", "poly:x"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("position"));

    assert_eq!(beilinson(&["nonsense"]).status.code(), Some(3));
    assert_eq!(beilinson(&["cyclic", "--algebra", "poly:1", "--degrees", "3..1"]).status.code(), Some(3));
}

#[test]
fn help_and_version_exit_zero() {
    let out = beilinson(&["--version"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).starts_with("beilinson "));
    assert_eq!(beilinson(&["verify", "--help"]).status.code(), Some(0));
}

#[test]
fn complex_dump_round_trips_through_homology() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("hh.json");
    let dump = beilinson(&["complex", "--algebra", "trunc:x^3", "--weight-max", "4", "--format", "json"]);
    assert_eq!(dump.status.code(), Some(0));
    std::fs::write(&path, &dump.stdout).unwrap();
    let betti = json(&["homology", "--input", path.to_str().unwrap()]);
    let direct = json(&["hochschild", "--algebra", "trunc:x^3", "--weight-max", "4"]);
    for (key, value) in direct["hh"].as_object().unwrap() {
        assert_eq!(&betti["betti"][key], value, "slice {key}");
    }
}

#[test]
fn bad_dump_is_a_parse_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, "{\"window\": [0, 1], \"weight_cap\": 0, \"modules\": {\"(0,0)\": 1, \"(1,0)\": 1}, \"differentials\": {\"(1,0)\": [[0, 0, \"1/0\"]]}}").unwrap();
    let out = beilinson(&["homology", "--input", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    let missing = dir.path().join("missing.json");
    assert_eq!(beilinson(&["homology", "--input", missing.to_str().unwrap()]).status.code(), Some(3));
}

#[test]
fn output_does_not_depend_on_thread_count() {
    let args = ["ss", "--algebra", "poly:2", "--weight-max", "3", "--pages", "2", "--format", "json"];
    let one = beilinson(&[&args[..], &["--threads", "1"]].concat());
    let four = beilinson(&[&args[..], &["--threads", "4"]].concat());
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, four.stdout);
}

#[test]
fn spectral_chart_marks_overlays() {
    let out = beilinson(&[
        "ss",
        "--algebra",
        "poly:1",
        "--weight-max",
        "3",
        "--overlay-hkr",
        "1",
        "--overlay-cw",
        "1",
    ]);
    let text = stdout(&out);
    assert!(text.starts_with("E_2 of HC^-(poly:1)"));
    assert!(text.contains("h: F^1_HKR (t >= 1)"));
    assert!(text.contains("c: F^1_CW (s >= 2)"));
    // row t = 0 holds HH_0 in every weight: four weights, four columns
    let bottom = text.lines().find(|l| l.trim_start().starts_with("0 |")).unwrap();
    assert_eq!(bottom.split_whitespace().filter(|c| c.starts_with('4')).count(), 4);
}

#[test]
fn prime_fields_are_accepted() {
    let v = json(&["hochschild", "--algebra", "trunc:x^2", "--weight-max", "3", "--field", "fp:2"]);
    // in characteristic 2 the factor 1 + (-1)^w vanishes, so every weight contributes twice
    assert_eq!(v["field"], "F_2");
    for w in 1..=3 {
        assert_eq!(v["hh"][format!("({},{w})", w - 1)], 1);
        assert_eq!(v["hh"][format!("({w},{w})")], 1);
    }
}
