use std::path::Path;
use std::process::{Command, Output};

fn pcpa(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pcpa")).args(args).output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

const GOLDEN: &str = include_str!("../../core/tests/data/power_of_two_a8.trace");

#[test]
fn trace_of_builtin_matches_golden_file() {
    let out = pcpa(&["run", "builtin:power-of-two-pcpa", "--input", "aaaaaaaa", "--trace"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), GOLDEN);
}

#[test]
fn exit_codes_follow_verdicts() {
    assert_eq!(code(&pcpa(&["run", "builtin:power-of-two-pcpa", "--input", "aaaa"])), 0);
    let rejected = pcpa(&["run", "builtin:power-of-two-pcpa", "--input", "aaa"]);
    assert_eq!(code(&rejected), 1);
    assert_eq!(stdout(&rejected).trim(), "rejected_exhaustive");
    let cut = pcpa(&["run", "builtin:otto-2head", "--input", "ababa", "--max-depth", "2"]);
    assert_eq!(code(&cut), 2);
    assert_eq!(stdout(&cut).trim(), "inconclusive_budget");
}

#[test]
fn usage_and_validation_errors_exit_3() {
    assert_eq!(code(&pcpa(&["frobnicate"])), 3);
    assert_eq!(code(&pcpa(&["run", "builtin:nope", "--input", "a"])), 3);
    assert_eq!(code(&pcpa(&["run", "builtin:power-of-two-pcpa", "--input", "b"])), 3);
    assert_eq!(code(&pcpa(&["--help"])), 0);

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    let mut spec: serde_json::Value =
        serde_json::from_str(&stdout(&pcpa(&["builtin", "power-of-two-pcpa"]))).unwrap();
    spec["degree"] = serde_json::json!(3);
    std::fs::write(&bad, spec.to_string()).unwrap();
    let out = pcpa(&["run", bad.to_str().unwrap(), "--input", "aa"]);
    assert_eq!(code(&out), 3);
    assert!(String::from_utf8_lossy(&out.stderr).contains("degree 3"));
}

#[test]
fn equiv_against_oracles() {
    let pass = pcpa(&["equiv", "builtin:otto-2head", "oracle:otto", "--max-len", "10"]);
    assert_eq!(code(&pass), 0);
    let fail = pcpa(&["equiv", "builtin:power-of-two-pcpa", "oracle:otto", "--max-len", "8"]);
    assert_eq!(code(&fail), 1);
    assert!(stdout(&fail).starts_with("fail at aa:"), "{}", stdout(&fail));
    let json = pcpa(&["equiv", "builtin:doubling-2head", "oracle:power-of-two", "--max-len", "64", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&json.stdout).unwrap();
    assert_eq!(v["status"], "pass");
    assert_eq!(v["words_checked"], 65);
}

#[test]
fn enumerate_lists_powers_of_two() {
    let out = pcpa(&["enumerate", "builtin:power-of-two-pcpa", "--alphabet", "a", "--max-len", "20"]);
    assert_eq!(code(&out), 0);
    let words: Vec<usize> = stdout(&out).lines().map(str::len).collect();
    assert_eq!(words, [2, 4, 8, 16]);
    let empty = pcpa(&["enumerate", "builtin:power-of-two-pcpa", "--max-len", "0"]);
    assert_eq!(stdout(&empty), "");
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

const PARITY: &str = r#"{
  "entry": "even",
  "input_alphabet": ["a"],
  "instructions": {
    "even": {"op": "read", "branch": {"a": "odd"}, "at_end": "acc"},
    "odd": {"op": "read", "branch": {"a": "even"}, "at_end": "rej"},
    "acc": {"op": "accept"},
    "rej": {"op": "reject"}
  }
}"#;

#[test]
fn compile_register_program_and_run_it() {
    let dir = tempfile::tempdir().unwrap();
    let prog = write(dir.path(), "parity.json", PARITY);
    assert_eq!(code(&pcpa(&["run", &prog, "--input", "aa"])), 0);
    assert_eq!(code(&pcpa(&["run", &prog, "--input", "aaa"])), 1);

    let out = dir.path().join("parity-pcpa.json");
    let compiled = pcpa(&["compile", "rm-to-pcpa", &prog, "-o", out.to_str().unwrap()]);
    assert_eq!(code(&compiled), 0, "{}", String::from_utf8_lossy(&compiled.stderr));
    let file: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(file["degree"], 2);
    assert!(file["compilation_map"]["notes"].as_array().unwrap().iter().any(|n| n["boundary"] == true));

    let out = out.to_str().unwrap();
    assert_eq!(code(&pcpa(&["run", out, "--input", "aa", "--max-depth", "100000"])), 0);
    assert_eq!(code(&pcpa(&["run", out, "--input", "a", "--max-depth", "100000"])), 1);
    let eq = pcpa(&["equiv", out, &prog, "--max-len", "4", "--max-depth", "100000"]);
    assert_eq!(code(&eq), 0, "{}", stdout(&eq));
}

#[test]
fn compile_palindrome_system_to_heads() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("pal.json");
    let out = out.to_str().unwrap();
    assert_eq!(code(&pcpa(&["compile", "pcpa-to-mhpda", "builtin:palindrome-pcpa", "-o", out])), 0);
    assert_eq!(code(&pcpa(&["run", out, "--input", "abba"])), 0);
    assert_eq!(code(&pcpa(&["run", out, "--input", "ab"])), 1);
    assert_eq!(code(&pcpa(&["equiv", out, "builtin:palindrome-pcpa", "--max-len", "6"])), 0);
    // Compiled register machines have epsilon moves, so they are refused.
    let prog = write(dir.path(), "parity.json", PARITY);
    let rm_out = dir.path().join("p.json");
    pcpa(&["compile", "rm-to-pcpa", &prog, "-o", rm_out.to_str().unwrap()]);
    let refused = pcpa(&["compile", "pcpa-to-mhpda", rm_out.to_str().unwrap(), "-o", out]);
    assert_eq!(code(&refused), 3);
    assert!(String::from_utf8_lossy(&refused.stderr).contains("precondition"));
}

#[test]
fn builtins_round_trip_through_files() {
    let dir = tempfile::tempdir().unwrap();
    for name in ["power-of-two-pcpa", "otto-2head", "doubling-2head", "palindrome-pcpa"] {
        let path = dir.path().join(format!("{name}.json"));
        let path = path.to_str().unwrap();
        assert_eq!(code(&pcpa(&["builtin", name, "-o", path])), 0);
        let a = pcpa(&["run", path, "--input", "aaaa", "--json"]);
        let b = pcpa(&["run", &format!("builtin:{name}"), "--input", "aaaa", "--json"]);
        assert_eq!(a.stdout, b.stdout, "{name}");
    }
}
