use std::path::Path;
use std::process::{Command, Output};

use genjac::formats::{parse_params, write_params};

fn genjac(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_genjac")).args(args).env_remove("GENJAC_SEED").output().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn gen_params(dir: &Path) -> String {
    let path = dir.join("params.txt");
    let path = path.to_str().unwrap().to_string();
    let out = genjac(&["gen-params", "--p", "11", "--seed", "42", "-o", &path]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    path
}

#[test]
fn gen_params_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let path = gen_params(dir.path());
    let text = std::fs::read_to_string(&path).unwrap();
    let params = parse_params(&text).unwrap();
    assert_eq!(write_params(&params), text);
    assert_eq!(params.jac_order().unwrap().order(), 1440);
    // same seed, same file; printed to stdout without -o
    assert_eq!(stdout(&genjac(&["gen-params", "--p", "11", "--seed", "42"])), text);
}

#[test]
fn seed_falls_back_to_environment() {
    let from_flag = stdout(&genjac(&["gen-params", "--p", "19", "--seed", "5"]));
    let from_env = Command::new(env!("CARGO_BIN_EXE_genjac"))
        .args(["gen-params", "--p", "19"])
        .env("GENJAC_SEED", "5")
        .output()
        .unwrap();
    assert_eq!(String::from_utf8(from_env.stdout).unwrap(), from_flag);
    assert_ne!(stdout(&genjac(&["gen-params", "--p", "19", "--seed", "6"])), from_flag);
}

#[test]
fn attack_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let params = gen_params(dir.path());
    let args = ["attack", "--params", &params, "--order", "12", "--seed", "7"];
    let (a, b) = (genjac(&args), genjac(&args));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    assert!(text.lines().any(|l| l.starts_with("exponent ")));
    let transcript = text.lines().find(|l| l.starts_with("transcript ")).unwrap();
    assert!(transcript.contains("pohlig-hellman-prime(2,2)") && transcript.contains("pohlig-hellman-prime(3,1)"));
    let steps: Vec<&str> = transcript.split_whitespace().skip(1).collect();
    for (i, _) in steps.iter().enumerate().filter(|(_, s)| **s == "bsgs") {
        assert!(i > 0 && ["projected-to-A", "pulled-back-to-B"].contains(&steps[i - 1]), "{transcript}");
    }
}

#[test]
fn attack_rejects_non_divisor() {
    let dir = tempfile::tempdir().unwrap();
    let params = gen_params(dir.path());
    assert_eq!(genjac(&["attack", "--params", &params, "--order", "7"]).status.code(), Some(1));
}

#[test]
fn pairing_reports_equal() {
    let dir = tempfile::tempdir().unwrap();
    let params = gen_params(dir.path());
    let out = genjac(&["pairing", "--params", &params, "--point", "5;3"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).lines().last(), Some("EQUAL"));
    assert_eq!(genjac(&["pairing", "--params", &params, "--point", "5;4"]).status.code(), Some(1));
    assert_eq!(genjac(&["pairing", "--params", &params, "--point", "inf"]).status.code(), Some(1));
}

#[test]
fn verify_passes() {
    let dir = tempfile::tempdir().unwrap();
    let params = gen_params(dir.path());
    let out = genjac(&["verify", "--params", &params, "--triples", "200", "--seed", "1"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).ends_with("OK\n"));
}

#[test]
fn bench_writes_table_and_csv() {
    let dir = tempfile::tempdir().unwrap();
    let csv_path = dir.path().join("bench.csv");
    let args = [
        "bench",
        "--trials",
        "20",
        "--scalar-bits",
        "16",
        "--seed",
        "3",
        "--no-timings",
        "--csv",
        csv_path.to_str().unwrap(),
    ];
    let (a, b) = (genjac(&args), genjac(&args));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let table = stdout(&a);
    assert!(table.starts_with("prng ChaCha20Rng/seed_from_u64  seed 3"));
    for name in ["Jac(E,m)", "E x G_m", "E ", "G_m"] {
        assert!(table.contains(name), "{name}");
    }
    let csv = std::fs::read_to_string(&csv_path).unwrap();
    assert!(csv.starts_with(&genjac::bench::CSV_COLUMNS.join(",")));
    assert_eq!(csv.lines().count(), 5);
    assert_eq!(genjac(&["bench", "--trials", "2"]).status.code(), Some(1));
}

#[test]
fn exit_codes() {
    assert_eq!(genjac(&["--help"]).status.code(), Some(0));
    assert_eq!(genjac(&["--version"]).status.code(), Some(0));
    assert_eq!(genjac(&[]).status.code(), Some(1));
    assert_eq!(genjac(&["gen-params"]).status.code(), Some(1));
    assert_eq!(genjac(&["verify", "--params", "/nonexistent"]).status.code(), Some(1));

    let dir = tempfile::tempdir().unwrap();
    let params = gen_params(dir.path());
    // |Jac| = 1440 for these parameters but no element has order 1440
    let out = genjac(&["attack", "--params", &params, "--order", "1440"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("no element of order 1440"));
}
