use std::io::Write;
use std::process::Command;

use cwtop::spaces::projective;
use serde_json::Value;
use tempfile::NamedTempFile;

fn cwtop(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_cwtop"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().expect("exit code"),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn temp_file(contents: &str) -> NamedTempFile {
    let mut f = NamedTempFile::new().unwrap();
    f.write_all(contents.as_bytes()).unwrap();
    f
}

fn path(f: &NamedTempFile) -> &str {
    f.path().to_str().unwrap()
}

const ABSOLUTE_Z: &str = r#"{"variant": "absolute", "abelian": true,
    "pi": {"1": "Z", "2": "Z", "3": "Z", "4": "Z", "5": "Z", "6": "Z"}}"#;

#[test]
fn ahomology_example() {
    let (code, out, _) = cwtop(&["ahomology", "--A", "rp:2", "--X", "sphere:4"]);
    assert_eq!(code, 0);
    assert!(out.contains("H^A_2(X) = Z/2\n"));
    for n in [0, 1, 3, 4] {
        assert!(out.contains(&format!("H^A_{n}(X) = 0\n")));
    }
}

#[test]
fn hopf_whitney_example() {
    let (code, out, _) = cwtop(&[
        "--out",
        "json",
        "hopf-whitney",
        "--K",
        "sphere:3",
        "--pi",
        "Z/5",
    ]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["group"], "Z/5");
    assert_eq!(v["structure"], "group");
}

#[test]
fn federer_page_from_table_file() {
    let t = temp_file(ABSOLUTE_Z);
    let (code, out, _) = cwtop(&[
        "--out",
        "json",
        "federer-e2",
        "--A",
        "rp:2",
        "--table",
        path(&t),
    ]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(
        v["-2,3"],
        serde_json::json!({"group": "Z/2", "status": "exact"})
    );
    assert_eq!(v["-2,2"]["status"], "subgroup_upper_bound");
    assert_eq!(v["-1,1"]["status"], "subgroup_upper_bound");
    assert_eq!(v["-2,1"]["status"], "zero");

    let (code, text, _) = cwtop(&["federer-e2", "--A", "rp:2", "--table", path(&t)]);
    assert_eq!(code, 0);
    assert!(text.contains("Z/2*"));
}

#[test]
fn diagonal_verdicts_and_range() {
    let t = temp_file(ABSOLUTE_Z);
    let (code, out, _) = cwtop(&[
        "--out",
        "json",
        "diagonal",
        "--A",
        "sphere:2",
        "--table",
        path(&t),
        "--n",
        "3",
    ]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["verdict"], "determined");
    assert_eq!(v["group"], "Z");

    let (code, out, _) = cwtop(&[
        "diagonal",
        "--A",
        "sphere:2",
        "--table",
        path(&t),
        "--n",
        "0",
    ]);
    assert_eq!(code, 0);
    assert!(out.contains("out of convergence range"));

    let (code, _, err) = cwtop(&[
        "diagonal",
        "--A",
        "sphere:2",
        "--table",
        path(&t),
        "--n",
        "5",
    ]);
    assert_eq!(code, 1);
    assert!(err.contains("table stops at q = 6"));
}

#[test]
fn missing_abelian_assertion_is_refused() {
    let t = temp_file(r#"{"variant": "absolute", "abelian": false, "pi": {"1": "Z"}}"#);
    let (code, _, err) = cwtop(&["federer-e2", "--A", "rp:2", "--table", path(&t)]);
    assert_eq!(code, 1);
    assert!(err.contains("abelian fundamental group"));
}

#[test]
fn malformed_inputs_exit_2() {
    let bad_table = temp_file(r#"{"variant": "absolute", "abelian": true, "pi": {"1": "Z/0"}}"#);
    assert_eq!(
        cwtop(&["federer-e2", "--A", "rp:2", "--table", path(&bad_table)]).0,
        2
    );
    let bad_complex = temp_file(
        r#"{"name": "x", "reduced": true, "ranks": {"1": 1, "2": 1}, "boundaries": {"2": [[1, 2]]}}"#,
    );
    let recipe = format!("file:{}", path(&bad_complex));
    assert_eq!(cwtop(&["homology", "--X", &recipe]).0, 2);
    assert_eq!(cwtop(&["ahomology", "--A", "rp:2"]).0, 2);
    assert_eq!(
        cwtop(&[
            "torsion-check",
            "--A",
            "rp:2",
            "--table",
            "x",
            "--primes",
            "4"
        ])
        .0,
        2
    );
}

#[test]
fn complex_file_round_trip_through_cli() {
    let c = projective(4);
    let f = temp_file(&c.to_json());
    let recipe = format!("file:{}", path(&f));
    let from_file = cwtop(&[
        "--out",
        "json",
        "ahomology",
        "--A",
        "moore:Z/2:1",
        "--X",
        &recipe,
    ]);
    let from_recipe = cwtop(&[
        "--out",
        "json",
        "ahomology",
        "--A",
        "moore:Z/2:1",
        "--X",
        "rp:4",
    ]);
    assert_eq!(from_file.0, 0);
    assert_eq!(from_file.1, from_recipe.1);
}

#[test]
fn moore_ses_both_versions() {
    let (code, out, _) = cwtop(&[
        "--out",
        "json",
        "moore-ses",
        "--G",
        "Z/2",
        "--m",
        "1",
        "--n",
        "2",
        "--X",
        "sphere:4",
    ]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(
        (v["ext"].as_str(), v["hom"].as_str(), v["middle"].as_str()),
        (Some("Z/2"), Some("0"), Some("Z/2"))
    );

    let t = temp_file(ABSOLUTE_Z);
    let (code, out, _) = cwtop(&[
        "moore-ses",
        "--G",
        "Z/2",
        "--m",
        "1",
        "--n",
        "2",
        "--table",
        path(&t),
    ]);
    assert_eq!(code, 0);
    assert!(out.contains("determined: pi^A_2(X) = Z/2"));
    let (code, _, err) = cwtop(&[
        "moore-ses",
        "--G",
        "Z/2",
        "--m",
        "1",
        "--n",
        "5",
        "--table",
        path(&t),
    ]);
    assert_eq!(code, 1);
    assert!(err.contains("pi_"));
}

#[test]
fn torsion_check_reports_hypothesis() {
    let t = temp_file(ABSOLUTE_Z);
    let (code, out, _) = cwtop(&[
        "--out",
        "json",
        "torsion-check",
        "--A",
        "rp:2",
        "--table",
        path(&t),
        "--primes",
        "2",
    ]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["hypothesis"], true);
    let (_, out, _) = cwtop(&[
        "--out",
        "json",
        "torsion-check",
        "--A",
        "rp:3",
        "--table",
        path(&t),
        "--primes",
        "2",
    ]);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["hypothesis"], false);
}

#[test]
fn axioms_verb() {
    let (code, out, _) = cwtop(&[
        "axioms",
        "--A",
        "rp:2",
        "--X",
        "sphere:4",
        "--X",
        "moore:Z/4:3",
        "--n",
        "2",
    ]);
    assert_eq!(code, 0);
    assert_eq!(out.matches("holds").count(), 2);
}

#[test]
fn corpus_verb_passes() {
    let (code, out, _) = cwtop(&["corpus"]);
    assert_eq!(out.lines().count(), 11);
    assert!(out.lines().all(|l| l.starts_with("PASS ")), "{out}");
    assert_eq!(code, 0);
}

#[test]
fn output_is_deterministic() {
    let t = temp_file(ABSOLUTE_Z);
    let args = [
        "--out",
        "json",
        "federer-e2",
        "--A",
        "moore:Z/2+Z/4:2",
        "--table",
        path(&t),
    ];
    assert_eq!(cwtop(&args), cwtop(&args));
}
