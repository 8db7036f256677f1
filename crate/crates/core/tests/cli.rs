use std::io::Write;
use std::process::{Command, Output, Stdio};

fn llc(args: &[&str], stdin: &str, env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_llc"));
    cmd.args(args).stdin(Stdio::piped()).stdout(Stdio::piped()).stderr(Stdio::piped()).env_remove("LLC_SEED");
    for (k, v) in env {
        cmd.env(k, v);
    }
    let mut child = cmd.spawn().unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

const RUNNING: &str = "field Q(5); chiV 5; param phi { chi(1); chi(5); }";

#[test]
fn run_reports_and_exit_codes() {
    let ok = llc(&["run", "-"], &format!("{RUNNING} hilbert 2 5"), &[]);
    assert_eq!(code(&ok), 0);
    assert_eq!(String::from_utf8_lossy(&ok.stdout), "-1\n");

    let parse = llc(&["run", "-"], "field Q(5); chiV 5; packet", &[]);
    assert_eq!(code(&parse), 1);
    assert!(String::from_utf8_lossy(&parse.stderr).contains("[P001]"));

    let semantic = llc(&["run", "-"], "field Q(5); chiV 5; param bad { chi(0); } packet bad", &[]);
    assert_eq!(code(&semantic), 2);

    let unknown = llc(&["run", "-"], &format!("{RUNNING} packet psi"), &[]);
    assert_eq!(code(&unknown), 2);
    assert!(String::from_utf8_lossy(&unknown.stderr).contains("[S001]"));

    let module = llc(&["run", "-"], &format!("{RUNNING} contra phi --eta ++"), &[]);
    assert_eq!(code(&module), 2);
}

#[test]
fn format_flag_overrides_scenario() {
    let o = llc(&["run", "-", "--format", "json"], &format!("{RUNNING} packet phi --c 1 --format table"), &[]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["result"]["members"].as_array().unwrap().len(), 4);
}

#[test]
fn fmt_prints_canonical_text() {
    let o = llc(&["fmt", "-"], &format!("{RUNNING}   packet phi --format table --c 1"), &[]);
    assert_eq!(
        String::from_utf8_lossy(&o.stdout),
        "field Q(5);\nchiV 5;\nparam phi { chi(1); chi(5); }\npacket phi --c 1 --format table\n"
    );
}

#[test]
fn check_exit_codes_and_seed_fallback() {
    let zero = llc(&["check", "--trials", "0"], "", &[]);
    assert_eq!(code(&zero), 1);

    let bug = llc(&["check", "--trials", "50", "--mutation", "kappa-trivial"], "", &[]);
    assert_eq!(code(&bug), 3);
    assert!(String::from_utf8_lossy(&bug.stdout).contains("counterexample for det_twist"));

    let clean = llc(&["check", "--trials", "30", "--format", "json"], "", &[("LLC_SEED", "7")]);
    assert_eq!(code(&clean), 0);
    let flagged = llc(&["check", "--trials", "30", "--seed", "7", "--format", "json"], "", &[]);
    assert_eq!(clean.stdout, flagged.stdout);

    let unknown = llc(&["check", "--mutation", "nope"], "", &[]);
    assert_eq!(code(&unknown), 1);
}
