use std::fs;

use ellfive::cli::run;
use ellfive::lemmata::{Certificate, Report};

fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("ellfive").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

#[test]
fn verify_lemma_t7_passes() {
    let (code, out, _) = call(&["verify", "lemma", "t7"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("t7") && out.contains("PASS"));
}

#[test]
fn unknown_lemma_is_usage_error() {
    let (code, _, err) = call(&["verify", "lemma", "nosuch"]);
    assert_eq!(code, 2);
    assert!(err.contains("nosuch"));
    assert_eq!(call(&["frobnicate"]).0, 2);
    assert_eq!(call(&[]).0, 2);
}

#[test]
fn help_exits_zero() {
    let (code, out, _) = call(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("verify"));
}

#[test]
fn report_json_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let (code, _, _) = call(&["verify", "lemma", "redtr", "--json", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    let text = fs::read_to_string(&path).unwrap();
    let report: Report = serde_json::from_str(&text).unwrap();
    assert!(report.passed);
    assert_eq!(report.to_json(), text);
}

#[test]
fn certificates_written_with_manifest() {
    let dir = tempfile::tempdir().unwrap();
    let (code, out, _) = call(&[
        "verify",
        "lemma",
        "bluetr",
        "--certificates",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(code, 0, "{out}");
    assert!(dir.path().join("manifest.json").exists());
    let cert: Certificate =
        serde_json::from_str(&fs::read_to_string(dir.path().join("bluetr-11.json")).unwrap())
            .unwrap();
    assert_eq!(cert.queries.len(), 1);
}

#[test]
fn render_is_byte_stable() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.svg");
    let b = dir.path().join("b.svg");
    assert_eq!(
        call(&["render", "fig1a", "--svg", a.to_str().unwrap()]).0,
        0
    );
    assert_eq!(
        call(&["render", "fig1a", "--svg", b.to_str().unwrap()]).0,
        0
    );
    let text = fs::read_to_string(&a).unwrap();
    assert_eq!(text, fs::read_to_string(&b).unwrap());
    assert_eq!(text.matches("<polygon class=\"red\"").count(), 1);
    assert_eq!(text.matches("<circle class=\"blue\"").count(), 3);
    assert_eq!(
        text.matches("<circle class=").count() + text.matches("<polygon class=").count(),
        10
    );
}

#[test]
fn render_pattern_and_unknown_name() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("b.svg");
    assert_eq!(
        call(&[
            "render",
            "patternB",
            "--svg",
            p.to_str().unwrap(),
            "--radius",
            "5"
        ])
        .0,
        0
    );
    assert!(fs::read_to_string(&p).unwrap().contains("class=\"red\""));
    assert_eq!(call(&["render", "fig9", "--svg", p.to_str().unwrap()]).0, 2);
}

#[test]
fn coloring_validate() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("a.json");
    let (code, out, _) = call(&[
        "coloring",
        "validate",
        "A",
        "--radius",
        "12",
        "--json",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code, 0, "{out}");
    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["red_unit_pairs"], 0);
    assert_eq!(v["blue_l5"], 0);
    assert_eq!(call(&["coloring", "validate", "B", "--radius", "4"]).0, 2);
    assert_eq!(call(&["coloring", "validate", "Q"]).0, 2);
}

#[test]
fn oracle_on_shipped_instance() {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/data/fig4.json");
    let (code, out, _) = call(&["oracle", path]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("solver unsat, exhaustive unsat"));
    assert_eq!(call(&["oracle", "/nonexistent.json"]).0, 2);
}

#[test]
fn export_cnf_writes_dimacs() {
    let dir = tempfile::tempdir().unwrap();
    let (code, _, _) = call(&[
        "export-cnf",
        "bluetr",
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    let cnf = fs::read_to_string(dir.path().join("bluetr-11-1-unsat.cnf")).unwrap();
    assert!(cnf.lines().any(|l| l.starts_with("p cnf ")));
    let back = ellfive::solver::ColoringProblem::from_dimacs(&cnf).unwrap();
    assert!(!ellfive::solver::solve(&back).is_sat());
    assert!(dir.path().join("bluetr-11-1-unsat.varmap.json").exists());
}

#[test]
fn model_cap_must_be_positive() {
    assert_eq!(call(&["enumerate", "col2", "--model-cap", "0"]).0, 2);
}
