use std::path::PathBuf;
use std::process::Command;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_sharpblunt"));
    c.env_remove("SHARPBLUNT_MAX_RANK");
    c
}

fn run(args: &[&str]) -> (i32, String, String) {
    let out = bin().args(args).output().expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).expect("utf8"),
        String::from_utf8(out.stderr).expect("utf8"),
    )
}

fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

/// Compares against `tests/golden/<name>`; `UPDATE_GOLDEN=1` rewrites it.
fn golden(name: &str, args: &[&str]) {
    let (code, out, err) = run(args);
    assert_eq!(code, 0, "{args:?}: {err}");
    let path = golden_dir().join(name);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, &out).unwrap();
    }
    let want = std::fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing golden {name}"));
    assert_eq!(out, want, "{name} drifted; rerun with UPDATE_GOLDEN=1 after checking the diff");
}

#[test]
fn golden_e8_blunt() {
    golden("e8_blunt.txt", &["classify", "blunt", "--type", "E8", "--omega", "trivial"]);
}

#[test]
fn golden_c_sharp_csv() {
    golden("c_sharp.csv", &["classify", "sharp", "--type", "C", "--rank", "2..20", "--omega", "trivial", "--format", "csv"]);
}

#[test]
fn golden_a5_strictly_blunt() {
    golden("a5_strictly_blunt.txt", &["classify", "strictly-blunt", "--type", "A", "--rank", "5", "--omega", "all"]);
}

#[test]
fn golden_theta_json() {
    golden("theta_exceptional.jsonl", &["theta", "--type", "E7", "--format", "json"]);
}

#[test]
fn golden_bijection() {
    golden("bijection_b.txt", &["bijection", "--type", "B", "--rank", "3..9"]);
}

#[test]
fn golden_explain() {
    golden("explain.txt", &["explain"]);
}

#[test]
fn e8_blunt_records() {
    let (_, out, _) = run(&["classify", "blunt", "--type", "E8", "--omega", "trivial", "--format", "json"]);
    let mut cases: Vec<String> = out
        .lines()
        .map(|l| serde_json::from_str::<serde_json::Value>(l).unwrap()["result"]["case"].as_str().unwrap().to_string())
        .collect();
    cases.sort();
    assert_eq!(cases, ["a1", "a2", "a3", "a4", "a5", "a6", "a7"]);
}

#[test]
fn strictly_blunt_a5_is_the_generators() {
    let (_, out, _) = run(&["classify", "strictly-blunt", "--type", "A", "--rank", "5", "--omega", "all", "--format", "json"]);
    let coords: Vec<serde_json::Value> = out
        .lines()
        .map(|l| serde_json::from_str::<serde_json::Value>(l).unwrap()["query"]["omega"]["coords"].clone())
        .collect();
    assert_eq!(coords, [serde_json::json!([1]), serde_json::json!([5])]);
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["classify", "sharp", "--type", "E9"][..],
        &["classify", "sharp", "--type", "B"],
        &["classify", "sharp", "--type", "D6", "--omega", "generator"],
        &["classify", "sharp", "--type", "C4", "--omega", "in-underline"],
        &["classify", "sharp", "--type", "C4", "--omega", "index:9"],
        &["classify", "sharp", "--type", "A", "--rank", "70"],
        &["classify", "nonsense", "--type", "A3"],
        &["verify", "--scope", "everything"],
    ] {
        let (code, _, err) = run(args);
        assert_eq!(code, 2, "{args:?}");
        assert!(!err.is_empty());
    }
    let (_, _, err) = run(&["classify", "sharp", "--type", "E9"]);
    assert!(err.contains("valid types"));
}

#[test]
fn max_rank_flag_beats_env() {
    let out = bin().args(["classify", "sharp", "--type", "A", "--rank", "9"]).env("SHARPBLUNT_MAX_RANK", "5").output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = bin()
        .args(["classify", "sharp", "--type", "A", "--rank", "9", "--max-rank", "10"])
        .env("SHARPBLUNT_MAX_RANK", "5")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn out_file_matches_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("x.csv");
    let args = ["classify", "blunt", "--type", "D", "--rank", "4..10", "--format", "csv"];
    let (_, stdout, _) = run(&args);
    let mut with_out: Vec<&str> = args.to_vec();
    let ps = p.to_str().unwrap();
    with_out.extend(["--out", ps]);
    assert_eq!(run(&with_out).0, 0);
    assert_eq!(std::fs::read_to_string(&p).unwrap(), stdout);
}

fn schema(name: &str) -> jsonschema::JSONSchema {
    let text = std::fs::read_to_string(PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("schema").join(name)).unwrap();
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    jsonschema::JSONSchema::compile(&v).expect("schema compiles")
}

#[test]
fn json_output_validates() {
    let s = schema("output.v1.schema.json");
    let queries: [&[&str]; 7] = [
        &["classify", "sharp", "--type", "D", "--rank", "4..16"],
        &["classify", "sharp", "--type", "C", "--rank", "2..12", "--mode", "literal"],
        &["classify", "strictly-sharp", "--type", "B", "--rank", "3..20"],
        &["classify", "blunt", "--type", "C", "--rank", "2..16"],
        &["classify", "strictly-blunt", "--type", "E6"],
        &["bijection", "--type", "B", "--rank", "3..12"],
        &["theta", "--type", "G2"],
    ];
    for q in queries {
        let mut args = q.to_vec();
        args.extend(["--format", "json"]);
        let (code, out, _) = run(&args);
        assert_eq!(code, 0);
        assert!(!out.is_empty(), "{q:?}");
        for line in out.lines() {
            let v: serde_json::Value = serde_json::from_str(line).unwrap();
            assert!(s.is_valid(&v), "{q:?}: {line}");
        }
    }
}

#[test]
fn verify_report_validates_and_repeats() {
    let s = schema("verify.v1.schema.json");
    let args = ["verify", "--scope", "counts"];
    let (code, a, _) = run(&args);
    assert_eq!(code, 0);
    let (_, b, _) = run(&args);
    assert_eq!(a, b);
    let v: serde_json::Value = serde_json::from_str(&a).unwrap();
    assert!(s.is_valid(&v));
    assert_eq!(v["passed"], serde_json::json!(true));
}

#[test]
fn verify_failure_exit_1() {
    // B4 with omega != 1 has the blunt class that iota cannot place
    let (code, out, _) = run(&["verify", "--scope", "correspondence", "--max-rank", "4", "--format", "table"]);
    assert_eq!(code, 1);
    assert!(out.contains("B4 omega [1]"));
}
