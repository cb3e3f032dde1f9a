use std::process::{Command, Output};

fn kleinian(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kleinian")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn simple_axis_prints_witness_word() {
    let o = kleinian(&["simple-axis", "--n", "3", "--i", "5", "--max-syllables", "9"]);
    assert!(o.status.success());
    let v = json(&o);
    assert_eq!(v["witness_word"], "gfgfg");
    assert_eq!(v["simple"], "No");
    assert_eq!(v["search"]["exact"], "-2");
}

#[test]
fn simple_axis_unknown_row_fails() {
    let o = kleinian(&["simple-axis", "--n", "3", "--i", "99"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn quartic_volume() {
    let o = kleinian(&["volume", "--poly", "z^4+6z^3+12z^2+9z+1"]);
    assert!(o.status.success());
    let v = json(&o);
    assert_eq!(v["discriminant"], "-275");
    assert_eq!(v["zeta2"]["prime_bound"], 100000);
    let vol = v["volume"].as_f64().unwrap();
    assert!((vol - 0.03905).abs() < 0.01 * 0.03905);
}

#[test]
fn cubic_volume_needs_prime_norm() {
    assert_eq!(kleinian(&["volume", "--poly", "z^3+5z^2+8z+5"]).status.code(), Some(1));
    let o = kleinian(&["volume", "--poly", "[5,8,5,1]", "--np", "5", "--prime-bound", "1000"]);
    assert!(o.status.success());
    let vol = json(&o)["volume"].as_f64().unwrap();
    assert!((vol - 0.0785).abs() < 0.01 * 0.0785);
}

#[test]
fn explore_emits_csv() {
    let o = kleinian(&["explore", "--beta", "-1", "--map", "cubic", "--grid", "-1:1:-1:1:3"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "re,im,verdict,enters_unit_disc,min_modulus");
    assert_eq!(lines.len(), 10);
    assert!(lines.iter().any(|l| l.starts_with("0,0,converges_to_zero")));
}

#[test]
fn check_exit_code_follows_mismatches() {
    let dir = std::env::temp_dir();
    let good = dir.join("kleinian_cli_good.json");
    let bad = dir.join("kleinian_cli_bad.json");
    let row = |delta: f64| {
        format!(
            r#"{{"n":3,"i":3,"poly":[1,9,12,6,1],"gamma_approx":[-1.5,0.6066],"expected":{{"delta":{}}}}}"#,
            delta
        )
    };
    std::fs::write(&good, row(0.197)).unwrap();
    std::fs::write(&bad, format!("[{}]", row(0.3))).unwrap();
    let o = kleinian(&["--threads", "2", "check", good.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["summary"]["unexpected_mismatches"], 0);
    let o = kleinian(&["check", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(json(&o)["summary"]["unexpected_mismatches"], 1);
}

#[test]
fn table_for_small_catalog() {
    let path = std::env::temp_dir().join("kleinian_cli_catalog.json");
    std::fs::write(&path, r#"[{"n":6,"i":2,"poly":[1,0,1],"gamma_approx":[0,1],"expected":{"delta":0.7642}}]"#).unwrap();
    let o = kleinian(&["table", "--catalog", path.to_str().unwrap(), "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["tables"].as_array().unwrap().len(), 12);
    assert_eq!(v["tables"][3]["rows"][0][3], "0.7643");
    assert_eq!(kleinian(&["table", "--format", "xml"]).status.code(), Some(1));
}
