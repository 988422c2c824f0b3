//! End-to-end tests driving the command-line interface in process and
//! asserting the exit-code contract: 0 = holds, 1 = falsified, 2 = usage.

use std::fs;
use std::path::{Path, PathBuf};

fn fixture(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
        .display()
        .to_string()
}

fn sm(args: &[&str]) -> (u8, String) {
    let mut argv = vec!["symmorse".to_string()];
    argv.extend(args.iter().map(|s| s.to_string()));
    let mut out = Vec::new();
    let code = symmorse::cli::run(&argv, &mut out);
    (code, String::from_utf8(out).expect("utf-8 output"))
}

fn tmp(dir: &tempfile::TempDir, name: &str) -> String {
    dir.path().join(name).display().to_string()
}

#[test]
fn help_and_version_exit_zero() {
    let (code, text) = sm(&["--help"]);
    assert_eq!(code, 0);
    assert!(text.contains("symmorse"));
    assert!(text.contains("validate"));
    let (code, _) = sm(&["--version"]);
    assert_eq!(code, 0);
}

#[test]
fn usage_errors_exit_two() {
    let (code, _) = sm(&["frobnicate"]);
    assert_eq!(code, 2);
    let (code, text) = sm(&["validate", "/nonexistent/complex.json"]);
    assert_eq!(code, 2);
    assert!(text.contains("error:"));
    assert!(text.contains("/nonexistent/complex.json"));
    let (code, _) = sm(&[
        "permissible",
        &fixture("half-triangle.json"),
        "--lower",
        "v",
    ]);
    assert_eq!(code, 2, "--lower without --upper");
    let (code, _) = sm(&["collapse", &fixture("half-triangle.json")]);
    assert_eq!(code, 2, "collapse needs --dmf or --matching");
    let (code, _) = sm(&[
        "collapse",
        &fixture("half-triangle.json"),
        "--dmf",
        &fixture("half-triangle-dmf-valid.json"),
        "--matching",
        &fixture("half-triangle-matching.json"),
    ]);
    assert_eq!(code, 2, "--dmf conflicts with --matching");
}

#[test]
fn validate_accepts_every_complex_fixture() {
    for name in [
        "half-triangle.json",
        "interval.json",
        "triangle.json",
        "circle.json",
        "coloop-g2.json",
        "coloop-g3.json",
    ] {
        let (code, text) = sm(&["validate", &fixture(name)]);
        assert_eq!(code, 0, "{name}: {text}");
        assert!(text.contains("all relation families hold"), "{name}");
    }
    let (_, text) = sm(&["validate", &fixture("half-triangle.json")]);
    assert!(text.contains("8 simplices, top dimension 2"));
}

#[test]
fn structured_output_is_byte_stable() {
    for args in [
        vec!["validate", &fixture("half-triangle.json")],
        vec!["orbits", &fixture("half-triangle.json")],
        vec!["permissible", &fixture("half-triangle.json")],
        vec![
            "check-dmf",
            &fixture("half-triangle.json"),
            &fixture("half-triangle-dmf-valid.json"),
        ],
        vec!["match", &fixture("half-triangle.json"), "--seed", "3"],
        vec!["homology", &fixture("circle.json")],
        vec!["ag", "certify", "2"],
    ] {
        let mut argv: Vec<&str> = args.clone();
        argv.push("--format");
        argv.push("structured");
        let (code_a, first) = sm(&argv);
        let (code_b, second) = sm(&argv);
        assert_eq!(code_a, 0, "{args:?}: {first}");
        assert_eq!(code_b, 0);
        assert_eq!(first, second, "{args:?} output differs across runs");
        serde_json::from_str::<serde_json::Value>(&first)
            .unwrap_or_else(|e| panic!("{args:?} is not one JSON document: {e}"));
    }
}

#[test]
fn orbits_lists_every_orbit() {
    let (code, text) = sm(&["orbits", &fixture("half-triangle.json")]);
    assert_eq!(code, 0);
    assert!(text.contains("dim 0: [v] size 1 |Aut| 1"));
    assert!(text.contains("dim 1: [a0] size 2 |Aut| 1"));
    assert!(text.contains("dim 1: [c] size 1 |Aut| 2"));
    assert!(text.contains("dim 2: [T0] size 3 |Aut| 2"));
    assert!(text.contains("total orbits: 5"));
}

#[test]
fn permissible_listing_and_single_pairs() {
    let (code, text) = sm(&["permissible", &fixture("half-triangle.json")]);
    assert_eq!(code, 0);
    assert!(text.contains("total cover pairs: 5"));
    assert!(text.contains("[c] < [T0]: permissible"));
    assert!(text.contains("[w] < [c]: not permissible"));

    let (code, text) = sm(&[
        "permissible",
        &fixture("half-triangle.json"),
        "--lower",
        "c",
        "--upper",
        "T0",
    ]);
    assert_eq!(code, 0, "{text}");
    assert!(text.contains("verdict: permissible"));

    let (code, text) = sm(&[
        "permissible",
        &fixture("half-triangle.json"),
        "--lower",
        "w",
        "--upper",
        "c",
    ]);
    assert_eq!(code, 1);
    assert!(text.contains("not permissible"));
}

#[test]
fn check_dmf_triage_exit_codes() {
    let (code, text) = sm(&[
        "check-dmf",
        &fixture("half-triangle.json"),
        &fixture("half-triangle-dmf-valid.json"),
    ]);
    assert_eq!(code, 0, "{text}");
    assert!(text.contains("critical orbits: v"));
    assert!(text.contains("discrete Morse function: VALID"));

    let (code, text) = sm(&[
        "check-dmf",
        &fixture("half-triangle.json"),
        &fixture("half-triangle-dmf-two-down.json"),
    ]);
    assert_eq!(code, 1);
    assert!(text.contains("discrete Morse function: INVALID"));
    assert!(text.contains("[a0]"));
}

#[test]
fn levels_extracts_and_writes_subcomplexes() {
    let dir = tempfile::tempdir().unwrap();
    let out = tmp(&dir, "level.json");
    let (code, text) = sm(&[
        "levels",
        &fixture("half-triangle.json"),
        &fixture("half-triangle-dmf-valid.json"),
        "--cutoff",
        "1",
        "--out",
        &out,
    ]);
    assert_eq!(code, 0, "{text}");
    let sub = symmorse::io::read_complex(Path::new(&out)).unwrap();
    assert!(sub.validate().is_valid());
    assert_eq!(sub.simplex_count(0), 2);
    assert_eq!(sub.simplex_count(1), 2);
    assert_eq!(sub.max_dim(), 1);

    // A rational cutoff below every positive value keeps only the minimum.
    let (code, text) = sm(&[
        "levels",
        &fixture("half-triangle.json"),
        &fixture("half-triangle-dmf-valid.json"),
        "--cutoff",
        "1/2",
    ]);
    assert_eq!(code, 0);
    assert!(text.contains("\"v\""));
    assert!(!text.contains("\"w\""));

    // At the top value the level subcomplex is the whole complex, and the
    // canonical rendering reproduces the fixture byte for byte.
    let (code, text) = sm(&[
        "levels",
        &fixture("half-triangle.json"),
        &fixture("half-triangle-dmf-valid.json"),
        "--cutoff",
        "4",
    ]);
    assert_eq!(code, 0);
    assert_eq!(
        text,
        fs::read_to_string(fixture("half-triangle.json")).unwrap()
    );
}

#[test]
fn matching_pipeline_through_files() {
    let dir = tempfile::tempdir().unwrap();
    let matching = tmp(&dir, "matching.json");
    let function = tmp(&dir, "function.json");

    let (code, text) = sm(&[
        "match",
        &fixture("half-triangle.json"),
        "--seed",
        "1",
        "--out",
        &matching,
    ]);
    assert_eq!(code, 0, "{text}");

    let (code, text) = sm(&["match-check", &fixture("half-triangle.json"), &matching]);
    assert_eq!(code, 0, "{text}");
    assert!(text.contains("matching: VALID"));

    let (code, text) = sm(&[
        "dmf-from-matching",
        &fixture("half-triangle.json"),
        &matching,
        "--out",
        &function,
    ]);
    assert_eq!(code, 0, "{text}");

    let (code, text) = sm(&["check-dmf", &fixture("half-triangle.json"), &function]);
    assert_eq!(code, 0, "{text}");
    assert!(text.contains("discrete Morse function: VALID"));
}

#[test]
fn match_check_rejects_reused_orbit() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    fs::write(&path, "[[\"v\", \"a0\"], [\"w\", \"a0\"]]\n").unwrap();
    let (code, text) = sm(&[
        "match-check",
        &fixture("half-triangle.json"),
        &path.display().to_string(),
    ]);
    assert_eq!(code, 1);
    assert!(text.contains("matching: INVALID"));
    assert!(text.contains("more than one pair"));
}

#[test]
fn collapse_certify_passes_on_collapsible_input() {
    let (code, text) = sm(&[
        "collapse",
        &fixture("half-triangle.json"),
        "--dmf",
        &fixture("half-triangle-dmf-valid.json"),
        "--certify",
    ]);
    assert_eq!(code, 0, "{text}");
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "attach [v] dim 0 |G| = 1");
    assert_eq!(lines[1], "collapse [w] < [a0]");
    assert_eq!(lines[2], "collapse [c] < [T0]");
    assert!(text.contains("point certificate: PASS"));
}

#[test]
fn collapse_certify_fails_on_a_circle() {
    let dir = tempfile::tempdir().unwrap();
    let empty = dir.path().join("empty.json");
    fs::write(&empty, "[]\n").unwrap();
    let (code, text) = sm(&[
        "collapse",
        &fixture("circle.json"),
        "--matching",
        &empty.display().to_string(),
        "--certify",
    ]);
    assert_eq!(code, 1);
    assert!(text.contains("point certificate: FAIL"));
}

#[test]
fn homology_reports_betti_numbers() {
    let (code, text) = sm(&["homology", &fixture("circle.json")]);
    assert_eq!(code, 0);
    assert!(text.contains("Betti numbers: [1, 1]"));

    let (code, text) = sm(&["homology", &fixture("half-triangle.json"), "--reduced"]);
    assert_eq!(code, 0);
    assert!(text.contains("reduced Betti numbers: [0, 0, 0]"));
}

#[test]
fn ag_build_reproduces_the_committed_fixtures() {
    let dir = tempfile::tempdir().unwrap();
    for (g, name) in [(2usize, "coloop-g2.json"), (3, "coloop-g3.json")] {
        let out = tmp(&dir, &format!("census{g}.json"));
        let (code, text) = sm(&["ag", "build", &g.to_string(), "--out", &out]);
        assert_eq!(code, 0, "{text}");
        assert!(text.contains("wrote complex to"));
        assert_eq!(
            fs::read_to_string(&out).unwrap(),
            fs::read_to_string(fixture(name)).unwrap(),
            "g = {g}"
        );
    }
    let (_, text) = sm(&["ag", "build", "2", "--out", &tmp(&dir, "again.json")]);
    assert!(text.contains("U(1,1)+U(1,1)"));
    assert!(text.contains("orbits per dimension: [1, 1]"));
}

#[test]
fn ag_certify_passes_for_small_ranks() {
    for g in ["1", "2", "3"] {
        let (code, text) = sm(&["ag", "certify", g]);
        assert_eq!(code, 0, "g = {g}: {text}");
        assert!(text.contains("certificate: PASS"), "g = {g}");
    }
    let (_, text) = sm(&["ag", "certify", "3"]);
    assert!(text.contains("clause 1"));
    assert!(text.contains("clause 4"));
    assert!(text.contains("[2|012] U(2,3) <-> [4|0123] U(2,3)+U(1,1)"));
}

#[test]
fn ag_rank_gating() {
    let dir = tempfile::tempdir().unwrap();
    let (code, text) = sm(&["ag", "build", "4", "--out", &tmp(&dir, "g4.json")]);
    assert_eq!(code, 2);
    assert!(
        text.contains("allow-g4") || text.contains("allow_g4"),
        "{text}"
    );

    let (code, _) = sm(&["ag", "certify", "5", "--allow-g4"]);
    assert_eq!(code, 2);
    let (code, _) = sm(&["ag", "build", "0"]);
    assert_eq!(code, 2);

    let out = tmp(&dir, "g4-ok.json");
    let (code, text) = sm(&["ag", "build", "4", "--allow-g4", "--out", &out]);
    assert_eq!(code, 0, "{text}");
    assert!(symmorse::io::read_complex(&PathBuf::from(&out))
        .unwrap()
        .validate()
        .is_valid());
}

#[test]
fn factorial_limit_flag_reaches_enumeration() {
    let (code, text) = sm(&[
        "orbits",
        &fixture("half-triangle.json"),
        "--factorial-limit",
        "1",
    ]);
    assert_eq!(code, 2);
    assert!(text.contains("factorial limit"));
}
