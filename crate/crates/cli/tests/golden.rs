//! Frozen report layouts. Regenerate with `UPDATE_GOLDEN=1 cargo test -p
//! algcoef --test golden` after an intentional schema change, and update
//! docs/schema.md to match.

use std::path::{Path, PathBuf};

use algcoef::{run_file, Overrides, ProblemSpec, Report};
use algcoef_core::pipeline::Stage;

fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

fn check(name: &str, stage: Stage) {
    let input = root().join("../../fixtures").join(format!("{name}.json"));
    let outcome = run_file(&input, stage, &Overrides::default()).unwrap();
    let got = Report::from_outcome(&outcome).to_json();
    let golden = root().join("tests/golden").join(format!("{name}.{}.json", stage.name()));
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&golden, &got).unwrap();
    }
    let want = std::fs::read_to_string(&golden).unwrap_or_else(|e| panic!("{}: {e}", golden.display()));
    assert!(got == want, "{} differs from the golden report", golden.display());
}

#[test]
fn catalan_report() {
    check("catalan", Stage::Verify);
}

#[test]
fn bilateral_failure_report() {
    check("bilateral_schroeder", Stage::Critical);
}

#[test]
fn ternary_failure_report() {
    check("ternary_tree", Stage::Verify);
}

#[test]
fn every_fixture_parses_and_reserializes() {
    let dir = root().join("../../fixtures");
    let mut names: Vec<_> = std::fs::read_dir(&dir).unwrap().map(|e| e.unwrap().path()).collect();
    names.sort();
    assert_eq!(names.len(), 12);
    for path in names {
        let spec = ProblemSpec::load(&path).unwrap();
        let text = serde_json::to_string(&spec).unwrap();
        let back = ProblemSpec::from_json(&text, Path::new("-")).unwrap();
        assert_eq!(back, spec);
        spec.to_problem(&path, &Overrides::default()).unwrap();
    }
}

#[test]
fn embedding_expressions_reparse() {
    use algcoef_core::poly::{parse_polynomial, VarList};
    for name in ["catalan", "dissections", "schroeder_trees", "motzkin"] {
        let input = root().join("../../fixtures").join(format!("{name}.json"));
        let outcome = run_file(&input, Stage::Embed, &Overrides::default()).unwrap();
        let e = outcome.embedding.as_ref().unwrap();
        let r = Report::from_outcome(&outcome).embedding.unwrap();
        let ring = VarList::new(r.variables.iter().map(String::as_str)).unwrap();
        assert_eq!(parse_polynomial(&r.numerator, &ring).unwrap(), e.g, "{name}");
        assert_eq!(parse_polynomial(&r.denominator, &ring).unwrap(), e.h, "{name}");
    }
}
