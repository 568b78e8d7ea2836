//! Golden outputs and the exit-code contract of `zxe`.

use std::process::{Command, Output};

fn zxe(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_zxe"))
        .args(args)
        .current_dir(env!("CARGO_MANIFEST_DIR"))
        .env_remove("ZXE_TOL")
        .env_remove("ZXE_CAP")
        .env_remove("ZXE_SEED")
        .output()
        .expect("run zxe")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

#[test]
fn interpret_e_lhs_is_one() {
    let o = zxe(&["interpret", "tests/data/e_lhs.zx", "--backend", "exact"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "scalar: 1\n");
    let o = zxe(&["interpret", "tests/data/e_lhs.zx", "--backend", "float"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("scalar: 1"), "{}", stdout(&o));
}

#[test]
fn interpret_json_has_schema() {
    let o = zxe(&["interpret", "tests/data/hadamard.zx", "--json"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["schema"], "1");
    assert_eq!(v["entries"].as_array().unwrap().len(), 4);
    assert_eq!(v["modulus"], 8);
}

#[test]
fn malformed_input_exits_2_with_position() {
    let o = zxe(&["interpret", "tests/data/truncated.zx"]);
    assert_eq!(code(&o), 2);
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("truncated.zx") && err.contains("line 3"), "{err}");
    let o = zxe(&["interpret", "tests/data/dangling.zx"]);
    assert_eq!(code(&o), 2);
    assert_eq!(code(&zxe(&["interpret", "tests/data/missing.zx"])), 2);
    assert_eq!(code(&zxe(&["interpret", "tests/data/e_lhs.zx", "--backend", "fancy"])), 2);
    assert_eq!(code(&zxe(&["frobnicate"])), 2);
    assert_eq!(code(&zxe(&["--tol", "-1", "witness", "prop1"])), 2);
    assert_eq!(code(&zxe(&["--cap", "2", "witness", "prop1"])), 2);
}

#[test]
fn invariant_bits() {
    let o = zxe(&["invariant", "tests/data/e_lhs.zx"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "invariant_r: 1\ninvariant_g: 1\n");
}

#[test]
fn rule_commands() {
    let o = zxe(&["rule", "check", "SUP_n", "--bind", "phase=1/4", "--bind", "branches=3"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "RULE SUP_n plain phase=1/4,branches=3 → PASS\n");
    let s1 = [
        "rule",
        "check",
        "S1",
        "--bind",
        "phase_a=1/2",
        "--bind",
        "phase_b=float:0.3",
        "--bind",
        "in_a=1",
        "--bind",
        "out_a=0",
        "--bind",
        "in_b=0",
        "--bind",
        "out_b=2",
        "--bind",
        "links=2",
        "--variant",
        "all",
    ];
    let o = zxe(&s1);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).lines().count(), 4);
    assert_eq!(code(&zxe(&["rule", "check", "NOPE"])), 2);
    assert_eq!(code(&zxe(&["rule", "check", "SUP_n", "--bind", "phase=1/4"])), 2);
    assert_eq!(code(&zxe(&["rule", "check", "E", "--bind", "phase=1/4"])), 2);
    let list = stdout(&zxe(&["rule", "list"]));
    for name in ["S1", "ZO", "SUP_n", "E", "HL", "GBIALG"] {
        assert!(list.lines().any(|l| l.starts_with(name)), "{name}");
    }
    let o = zxe(&["rule", "show", "ZO", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["origin"], "axiom");
    let o = zxe(&["rule", "show", "S1"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("links"));
}

#[test]
fn suites_are_deterministic() {
    let args = [
        "suite",
        "soundness",
        "--ruleset",
        "ZX_cyclo",
        "--max-arity",
        "1",
        "--grid",
        "π/4",
        "--random",
        "3",
        "--seed",
        "5",
        "--json",
    ];
    let (a, b) = (zxe(&args), zxe(&args));
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["schema"], "1");
    assert_eq!(v["failed"], 0);
    let o = zxe(&["suite", "soundness", "--ruleset", "ZX", "--max-arity", "1", "--grid", "pi/2", "--random", "0"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("suite soundness ZX:"));
    assert_eq!(code(&zxe(&["suite", "soundness", "--grid", "quarter"])), 2);
    assert_eq!(code(&zxe(&["suite", "soundness", "--ruleset", "ZW"])), 2);
    let o = zxe(&["suite", "invariants", "--ruleset", "ZX", "--max-arity", "1"]);
    assert_eq!(code(&o), 0);
    let changed: Vec<String> = stdout(&o)
        .lines()
        .filter(|l| l.contains("changes"))
        .map(|l| l.split_whitespace().next().unwrap().to_string())
        .collect();
    assert_eq!(changed, vec!["ZO"]);
}

#[test]
fn derive_check_bundled_and_rejected() {
    let o = zxe(&["derive", "check", "zo_from_zxe.json", "--paranoid"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).ends_with("ACCEPTED\n"));
    let text = stdout(&zxe(&["derive", "show", "iv_from_zxe"]));
    let dir = std::env::temp_dir().join(format!("zxe-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let broken = dir.join("broken.json");
    std::fs::write(&broken, text.replacen("\"rule\": \"S1\"", "\"rule\": \"S2\"", 1)).unwrap();
    let o = zxe(&["derive", "check", broken.to_str().unwrap()]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("REJECTED at step 1"), "{}", stdout(&o));
    let garbage = dir.join("garbage.json");
    std::fs::write(&garbage, "{\"ruleset\": 3}").unwrap();
    assert_eq!(code(&zxe(&["derive", "check", garbage.to_str().unwrap()])), 2);
    let o = zxe(&["derive", "check", "iv_from_zxe", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!((v["schema"].as_str(), v["verdict"].as_str()), (Some("1"), Some("accepted")));
    std::fs::remove_dir_all(dir).ok();
}

#[test]
fn witnesses() {
    let o = zxe(&["witness", "prop1"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("invariant bits 1 vs 0"));
    let o = zxe(&["witness", "sqrt2", "--k", "3,4,8"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).matches("[PASS]").count(), 3);
    assert_eq!(code(&zxe(&["witness", "sqrt2", "--k", "0"])), 2);
    assert_eq!(code(&zxe(&["witness", "supnec", "--p", "2"])), 1);
    assert_eq!(code(&zxe(&["witness", "supnec", "--p", "3", "--max-arity", "1"])), 0);
    let o = zxe(&["witness", "thm2", "--tol", "1e-9", "--json"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["pass"], true);
    let o = Command::new(env!("CARGO_BIN_EXE_zxe")).args(["witness", "thm2"]).env("ZXE_TOL", "1e-30").output().unwrap();
    assert_eq!(o.status.code(), Some(1), "an absurd tolerance makes the float checks fail");
}
