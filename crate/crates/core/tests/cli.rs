use std::process::{Command, Output};

use euler_refine::cli::parse_bfile;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_euler-refine"))
        .args(args)
        .env_remove("EULER_REFINE_CAP")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn table_all_routes_agree() {
    let o = run(&["table", "--max-n", "9", "--method", "all", "--with-d"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let text = stdout(&o);
    let row8 = text.lines().find(|l| l.trim_start().starts_with("8 ")).unwrap();
    let cells: Vec<&str> = row8.split_whitespace().collect();
    assert_eq!(&cells[..6], ["8", "1385", "723", "662", "1324", "61"]);
}

#[test]
fn verify_exits_zero() {
    let o = run(&["verify", "--max-n", "8", "--egf-order", "12"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("identities pass"));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["table", "--method", "bogus"]).status.code(), Some(2));
    assert_eq!(run(&["export", "Nope"]).status.code(), Some(2));
    assert_eq!(run(&["table", "--max-n", "12", "--method", "enum"]).status.code(), Some(2));
    assert_eq!(run(&["table", "--format", "bfile"]).status.code(), Some(2));
}

#[test]
fn cap_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_euler-refine"))
        .args(["openq", "--max-n", "8"])
        .env("EULER_REFINE_CAP", "7")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    let o = Command::new(env!("CARGO_BIN_EXE_euler-refine"))
        .args(["openq", "--max-n", "8", "--cap", "8"])
        .env("EULER_REFINE_CAP", "7")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn bfile_export_round_trips_through_out() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("eup.txt");
    let o = run(&["export", "Eup", "--max-n", "30", "--format", "bfile", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let rows = parse_bfile(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(rows.first().map(|r| r.0), Some(2));
    assert_eq!(rows.last().map(|r| r.0), Some(30));
    let eight = rows.iter().find(|r| r.0 == 8).unwrap();
    assert_eq!(eight.1.to_string(), "1324");
}

#[test]
fn export_json_is_string_array() {
    let o = run(&["export", "E", "--max-n", "5", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v, serde_json::json!(["1", "1", "1", "2", "5", "16"]));
}

#[test]
fn openq_and_bijection_check() {
    let o = run(&["openq", "--max-n", "10"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("not a proof"));
    let o = run(&["bijection-check", "--max-n", "8"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn ratios_json() {
    let o = run(&["ratios", "--max-n", "12", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v.as_array().is_some_and(|a| !a.is_empty()));
}
