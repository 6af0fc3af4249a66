use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn speckit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_speckit"))
        .args(args)
        .env_remove("SPECKIT_MAX_N")
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn script(name: &str, text: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("speckit-cli-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    fs::write(&path, text).unwrap();
    path
}

#[test]
fn empty_script_passes() {
    let path = script("empty.spec", "");
    let out = speckit(&["run", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).is_empty());
}

#[test]
fn passing_check_exits_zero() {
    let path = script("pass.spec", "check exp(x) * exp(-x) == 1 upto x:6;");
    let out = speckit(&["run", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    assert!(stdout(&out).contains(" pass "));
}

#[test]
fn failing_check_exits_one() {
    let path = script("fail.spec", "check \"wrong\" exp(x) == 1 + x upto x:3;");
    let out = speckit(&["run", path.to_str().unwrap()]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains(" FAIL "));
}

#[test]
fn syntax_error_exits_two_with_position() {
    let path = script("bad.spec", "check x == upto x:3;");
    let out = speckit(&["run", path.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("1:"));
}

#[test]
fn inadmissible_class_exits_two() {
    let path = script("inadmissible.spec", "let bad = SET(1);");
    assert_eq!(code(&speckit(&["run", path.to_str().unwrap()])), 2);
}

#[test]
fn oracle_above_cap_exits_three() {
    let path = script("cap.spec", "check oracle(9) == oracle(9) upto t:9;");
    assert_eq!(code(&speckit(&["run", path.to_str().unwrap()])), 3);
    assert_eq!(code(&speckit(&["enumerate", "--n", "8"])), 3);
}

#[test]
fn max_n_env_and_flag_raise_the_cap() {
    let raised = Command::new(env!("CARGO_BIN_EXE_speckit"))
        .args(["enumerate", "--n", "1"])
        .env("SPECKIT_MAX_N", "9")
        .output()
        .unwrap();
    assert_eq!(code(&raised), 0);
    let path = script("flag.spec", "check oracle(8) == oracle(8) upto t:8;");
    assert_eq!(code(&speckit(&["--max-n", "8", "run", path.to_str().unwrap()])), 0);
}

#[test]
fn shipped_scripts_pass_by_name() {
    for name in ["chains.spec", "hermite.spec", "taylor.spec", "transfer.spec"] {
        let out = speckit(&["run", name]);
        assert_eq!(code(&out), 0, "{name}: {}", stdout(&out));
    }
}

#[test]
fn verify_unknown_identity_exits_two() {
    assert_eq!(code(&speckit(&["verify", "nonsense"])), 2);
}

#[test]
fn verify_writes_json() {
    let path = script("hermite.json", "");
    let out = speckit(&["verify", "hermite-egf", "--json", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let value: serde_json::Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(value[0]["identity"], "hermite-egf");
    assert_eq!(value[0]["status"], "pass");
}

#[test]
fn expand_prints_text_and_json() {
    let out = speckit(&["expand", "(x + y)^2"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "truncation\n1/1 x^2\n2/1 x^1 y^1\n1/1 y^2\n");
    let out = speckit(&["expand", "exp(x)", "--caps", "x:2", "--format", "json"]);
    assert_eq!(code(&out), 0);
    let value: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert!(value.is_object());
}

#[test]
fn expand_rejects_bad_expression() {
    assert_eq!(code(&speckit(&["expand", "x +"])), 2);
}

#[test]
fn enumerate_counts_matchings() {
    let out = speckit(&["enumerate", "--n", "2", "--classify"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.starts_with("empty  C:[] O:[1,1]\n"), "{text}");
    assert!(text.contains("pairs 0: 1\npairs 1: 6\npairs 2: 3\ntotal: 10\n"), "{text}");
}
