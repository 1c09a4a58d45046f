use std::process::{Command, Output};

fn lingroup(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lingroup"))
        .args(args)
        .env_remove("LINGROUP_OUT")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn ghat_segments() {
    let o = lingroup(&["--system", "ghat", "--generations", "2", "segments"]);
    assert!(o.status.success());
    let s = stdout(&o);
    assert!(s.contains("2\tI\t7\t[a2][b,c][a1][b,d][a1][b,c][a2]\n"));
    assert!(s.contains("2\tJ\t7\t[a2][b,c][a1][b,d][a0][b,c][a2]\n"));
}

#[test]
fn grigorchuk_first_segment() {
    let o = lingroup(&["--generations", "1", "segments"]);
    assert!(stdout(&o).lines().any(|l| l == "1\tI\t1\t[a]"));
}

#[test]
fn dihedral_growth_line() {
    let o = lingroup(&["--system", "dihedral", "--radius", "5", "growth"]);
    assert!(o.status.success());
    assert!(stdout(&o).lines().any(|l| l == "5\t11"));
}

#[test]
fn order_of_ad() {
    let o = lingroup(&["order", "ad"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "ad\t4\n");
}

#[test]
fn oracle_verification_passes() {
    let o = lingroup(&["verify", "oracle"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["pass"], true);
    assert_eq!(v["disagreements"], 0);
}

#[test]
fn phi_report_is_json() {
    let o = lingroup(&["--system", "galpha", "--alpha", "s", "verify", "phi"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["image_order"], 16);
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(lingroup(&["--system", "nope", "segments"]).status.code(), Some(2));
    assert_eq!(lingroup(&["--radius", "0", "growth"]).status.code(), Some(2));
    assert_eq!(lingroup(&["--system", "galpha", "--alpha", "xz", "segments"]).status.code(), Some(2));
    assert_eq!(lingroup(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn failures_exit_1() {
    // ab generates the infinite cyclic subgroup of the dihedral group
    let o = lingroup(&["--system", "dihedral", "order", "ab", "--format", "json"]);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["order"]["kind"], "undetermined");

    let o = lingroup(&["--system", "dihedral", "verify", "phi"]);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["status"], "error");
}

#[test]
fn markov_growth_is_reproducible() {
    let args = ["--system", "markov", "--seed", "7", "--radius", "3", "growth", "--length", "5000"];
    let a = lingroup(&args);
    let b = lingroup(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn output_directory_from_env() {
    let dir = std::env::temp_dir().join(format!("lingroup-cli-{}", std::process::id()));
    let o = Command::new(env!("CARGO_BIN_EXE_lingroup"))
        .args(["--system", "dihedral", "--radius", "3", "growth"])
        .env("LINGROUP_OUT", &dir)
        .output()
        .unwrap();
    assert!(o.status.success());
    let written = std::fs::read_to_string(dir.join("growth-dihedral.tsv")).unwrap();
    assert_eq!(written, "0\t1\n1\t3\n2\t5\n3\t7\n");
    std::fs::remove_dir_all(dir).unwrap();
}
