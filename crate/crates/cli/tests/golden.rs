//! Golden-file and exit-code tests against the built binary.
//!
//! Set `COXCOMB_UPDATE_GOLDEN=1` to rewrite the expected outputs.

use std::path::{Path, PathBuf};
use std::process::Command;

const CASES: &[(&str, &[&str], &str, i32)] = &[
    ("snf", &["group", "snf"], "snf", 0),
    ("coker", &["group", "coker"], "coker", 0),
    ("hom", &["group", "hom"], "hom", 0),
    ("localize", &["group", "localize"], "localize", 0),
    (
        "exact_localization",
        &["group", "exact"],
        "exact_localization",
        0,
    ),
    ("exact_doubling", &["group", "exact"], "exact_doubling", 0),
    ("forget", &["group", "forget"], "forget", 0),
    ("threes_build", &["ring", "build"], "threes", 0),
    ("threes_trinomials", &["ring", "trinomials"], "threes", 0),
    ("r4_trinomials", &["ring", "trinomials"], "ring_r4", 0),
    ("r4_expand", &["ring", "expand"], "ring_r4", 0),
    (
        "r4_homogeneous",
        &["ring", "check-homogeneous"],
        "ring_r4",
        0,
    ),
    ("ring_dependent", &["ring", "build"], "ring_dependent", 3),
    ("threes_platonic", &["platonic"], "threes", 0),
    ("e8_platonic", &["platonic"], "e8", 0),
    ("threes_logterm", &["logterm", "--cite"], "threes", 0),
    ("e8_logterm", &["logterm"], "e8", 0),
    ("spherical_logterm", &["logterm"], "spherical", 0),
    ("hypotheses_missing", &["logterm"], "hypotheses_missing", 4),
    ("threes_iterate", &["iterate"], "threes", 0),
    ("static_iterate", &["iterate"], "iterate_static", 0),
    (
        "heuristic_iterate",
        &["iterate", "--heuristic-gcd"],
        "iterate_static",
        0,
    ),
    (
        "indivisible_iterate",
        &["iterate"],
        "iterate_indivisible",
        3,
    ),
    ("unknown_key", &["group", "snf"], "unknown_key", 2),
];

fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests")
}

fn coxcomb(args: &[&str], input: &Path) -> (String, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_coxcomb"))
        .args(args)
        .arg("-i")
        .arg(input)
        .env_remove("COXCOMB_MAX_STEPS")
        .output()
        .expect("binary runs");
    (
        String::from_utf8(out.stdout).expect("utf-8 output"),
        out.status.code().expect("exit code"),
    )
}

#[test]
fn golden_outputs_are_stable() {
    let update = std::env::var_os("COXCOMB_UPDATE_GOLDEN").is_some();
    for &(name, args, data, code) in CASES {
        let input = root().join("data").join(format!("{data}.json"));
        let (first, c1) = coxcomb(args, &input);
        let (second, c2) = coxcomb(args, &input);
        assert_eq!(first, second, "{name}: output differs between runs");
        assert_eq!((c1, c2), (code, code), "{name}: exit code");
        let golden = root().join("golden").join(format!("{name}.json"));
        if update {
            std::fs::write(&golden, &first).unwrap();
        }
        let expected = std::fs::read_to_string(&golden)
            .unwrap_or_else(|e| panic!("{}: {e}", golden.display()));
        assert_eq!(first, expected, "{name}: differs from golden file");
    }
}

#[test]
fn every_command_has_a_golden_case() {
    for command in ["group", "ring", "platonic", "logterm", "iterate"] {
        assert!(
            CASES.iter().any(|(_, args, _, _)| args[0] == command),
            "{command}"
        );
    }
}

#[test]
fn canonical_documents_round_trip() {
    for entry in std::fs::read_dir(root().join("data")).unwrap() {
        let path = entry.unwrap().path();
        let (canon, code) = coxcomb(&["canon"], &path);
        if path.ends_with("unknown_key.json") {
            assert_eq!(code, 2);
            continue;
        }
        assert_eq!(code, 0, "{}", path.display());
        let tmp = std::env::temp_dir().join(format!(
            "coxcomb-canon-{}-{}",
            std::process::id(),
            path.file_name().unwrap().to_string_lossy()
        ));
        std::fs::write(&tmp, &canon).unwrap();
        let (again, _) = coxcomb(&["canon"], &tmp);
        std::fs::remove_file(&tmp).unwrap();
        assert_eq!(canon, again, "{}", path.display());
    }
}

#[test]
fn output_flag_writes_the_same_bytes() {
    let input = root().join("data").join("hom.json");
    let target = std::env::temp_dir().join(format!("coxcomb-out-{}.json", std::process::id()));
    let (stdout, _) = coxcomb(&["group", "hom"], &input);
    let (empty, code) = coxcomb(&["group", "hom", "-o", target.to_str().unwrap()], &input);
    assert_eq!((empty.as_str(), code), ("", 0));
    assert_eq!(std::fs::read_to_string(&target).unwrap(), stdout);
    std::fs::remove_file(&target).unwrap();
}

#[test]
fn meta_sits_outside_the_payload() {
    let input = root().join("data").join("snf.json");
    let (plain, _) = coxcomb(&["group", "snf"], &input);
    let (with_meta, code) = coxcomb(&["group", "snf", "--meta"], &input);
    assert_eq!(code, 0);
    let a: serde_json::Value = serde_json::from_str(&plain).unwrap();
    let mut b: serde_json::Value = serde_json::from_str(&with_meta).unwrap();
    assert!(b["meta"]["generated_at_unix"].is_u64());
    b.as_object_mut().unwrap().remove("meta");
    assert_eq!(a, b);
}

#[test]
fn step_guardrail_comes_from_the_environment() {
    let input = root().join("data").join("threes.json");
    let run = |value: &str| {
        let out = Command::new(env!("CARGO_BIN_EXE_coxcomb"))
            .args(["iterate", "-i"])
            .arg(&input)
            .env("COXCOMB_MAX_STEPS", value)
            .output()
            .unwrap();
        (
            String::from_utf8(out.stdout).unwrap(),
            out.status.code().unwrap(),
        )
    };
    let (text, code) = run("0");
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["result"]["u_sequence"], serde_json::json!([3]));
    assert_eq!(v["result"]["status"]["kind"], "exhausted");
    assert_eq!(run("many").1, 2);
}

#[test]
fn usage_errors_exit_with_schema_code() {
    let out = Command::new(env!("CARGO_BIN_EXE_coxcomb"))
        .args(["group", "transpose", "-i", "x.json"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let missing = Command::new(env!("CARGO_BIN_EXE_coxcomb"))
        .args(["platonic", "-i", "/nonexistent/coxcomb.json"])
        .output()
        .unwrap();
    assert_eq!(missing.status.code(), Some(2));
}
