use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> String {
    let mut p = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    p.push("../../data");
    p.push(name);
    p.to_string_lossy().into_owned()
}

fn gorkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gorkit"))
        .args(args)
        .env_remove("GORKIT_PRIME")
        .env_remove("GORKIT_CAP")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn certifies_dual_numbers() {
    let o = gorkit(&["ig-certify", &data("e1.json")]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().next(), Some("certified d=0"));
}

#[test]
fn gdim_of_simple_over_a2() {
    let o = gorkit(&["gdim", &data("e2.json"), &data("s1.json")]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "Gd = 1 (= pd)");
}

#[test]
fn ext_of_simple_over_dual_numbers() {
    let o = gorkit(&["ext", &data("e1.json"), &data("s.json"), &data("s.json"), "--degree", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "dim Ext^3 = 1");
}

#[test]
fn uncertified_is_a_warning_unless_strict() {
    let e3 = data("e3.json");
    let o = gorkit(&["ig-certify", &e3, "--cap", "10"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("id(A) >= 11"), "{out}");
    assert!(out.contains("warning:"), "{out}");
    let o = gorkit(&["ig-certify", &e3, "--cap", "10", "--strict"]);
    assert_eq!(o.status.code(), Some(5));
}

#[test]
fn cap_from_environment_and_flag_precedence() {
    let e3 = data("e3.json");
    let o =
        Command::new(env!("CARGO_BIN_EXE_gorkit")).args(["ig-certify", &e3]).env("GORKIT_CAP", "4").output().unwrap();
    assert!(stdout(&o).contains("cap 4"), "{}", stdout(&o));
    let o = Command::new(env!("CARGO_BIN_EXE_gorkit"))
        .args(["ig-certify", &e3, "--cap", "6"])
        .env("GORKIT_CAP", "4")
        .output()
        .unwrap();
    assert!(stdout(&o).contains("cap 6"), "{}", stdout(&o));
}

#[test]
fn gorenstein_commands_refuse_uncertified_algebras() {
    let o = gorkit(&["gp-test", &data("e3.json"), &data("s.json"), "--cap", "6"]);
    assert_eq!(o.status.code(), Some(4));
    assert!(stdout(&o).contains("not certified IG within cap 6"));
}

#[test]
fn missing_file_and_unknown_subcommand() {
    let o = gorkit(&["pd", &data("e1.json"), "/nonexistent/m.json"]);
    assert_eq!(o.status.code(), Some(3));
    let o = gorkit(&["frobnicate"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn json_report_shape() {
    let o = gorkit(&["--json", "pd", &data("e2.json"), &data("s1.json")]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["schema"], "gorkit/1");
    assert_eq!(v["exit_code"], 0);
    assert_eq!(v["results"]["pd"]["value"], 1);
    assert_eq!(v["inputs"].as_object().unwrap().len(), 2);
}

#[test]
fn reports_are_deterministic() {
    let args = ["--json", "--seed", "7", "transfer-check", &data("e4_over_e2.json"), "--samples", "5"];
    let (a, b) = (gorkit(&args), gorkit(&args));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn tate_window_and_values() {
    let (e1, s) = (data("e1.json"), data("s.json"));
    let o = gorkit(&["tate", &e1, &s, &s, "--from", "-3", "--to", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert_eq!(out.lines().filter(|l| l.ends_with("= 1")).count(), 7, "{out}");
    let o = gorkit(&["tate", &e1, &s, &s, "--from", "-20", "--to", "0"]);
    assert_eq!(o.status.code(), Some(4));
}

#[test]
fn am_check_over_a2() {
    let o = gorkit(&["am-check", &data("e2.json"), &data("s1.json"), &data("s2.json")]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("exact: yes") && out.contains("engines agree: yes"), "{out}");
}

#[test]
fn frobenius_checks() {
    let o = gorkit(&["frob-check", &data("e4_over_e2.json")]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.starts_with("Frobenius extension verified"), "{out}");
    assert!(!out.contains("FAILED"), "{out}");
    let o = gorkit(&["frob-check", &data("e3_over_e1.json")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("refuted"));
}

#[test]
fn selftest_runs_clean() {
    for alg in ["e1", "e2", "e5"] {
        let o = gorkit(&["selftest", "--algebra", alg]);
        assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
        assert!(stdout(&o).contains("failures: 0"));
    }
}
