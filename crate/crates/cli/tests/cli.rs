use std::path::PathBuf;
use std::process::{Command, Output};

use algcoef::Report;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(format!("{name}.json"))
}

fn algcoef(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_algcoef"))
        .args(args)
        .env_remove("ALGCOEF_PRECISION_BITS")
        .output()
        .expect("binary runs")
}

fn run_fixture(stage: &str, name: &str, extra: &[&str]) -> Output {
    let path = fixture(name);
    let mut args = vec![stage, "--input", path.to_str().unwrap()];
    args.extend_from_slice(extra);
    algcoef(&args)
}

fn report(out: &Output) -> Report {
    serde_json::from_slice(&out.stdout).expect("stdout is a report")
}

fn temp_file(name: &str, body: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("algcoef-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p
}

#[test]
fn catalan_succeeds() {
    let out = run_fixture("all", "catalan", &[]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r.status, "ok");
    let a = r.asymptotics.unwrap();
    assert_eq!(a.rho_radical.as_deref(), Some("4"));
    assert_eq!(a.alpha, "3/2");
    assert!(a.constant.starts_with("5.641895835477562869480794515607725858"), "{}", a.constant);
    assert_eq!(r.validation.unwrap().rows.len(), 4);
}

#[test]
fn stages_stop_where_asked() {
    let r = report(&run_fixture("embed", "catalan", &[]));
    assert_eq!(r.completed, ["embed"]);
    assert!(r.embedding.is_some() && r.critical.is_none());
    let r = report(&run_fixture("critical", "catalan", &[]));
    assert_eq!(r.completed, ["embed", "certify", "critical"]);
    assert!(r.asymptotics.is_none());
}

#[test]
fn structured_failures_exit_2() {
    let out = run_fixture("critical", "bilateral_schroeder", &[]);
    assert_eq!(out.status.code(), Some(2));
    let f = report(&out).failure.unwrap();
    assert_eq!((f.stage.as_str(), f.kind.as_str()), ("critical", "no_affine_critical_points"));

    let out = run_fixture("certify", "bilateral_schroeder", &[]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(report(&out).failure.unwrap().kind, "not_combinatorial");

    let out = run_fixture("embed", "ternary_tree", &[]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(report(&out).failure.unwrap().kind, "h2_failure");

    let out = run_fixture("asympt", "dissections", &["--direction", "1/4,3/4"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(report(&out).failure.unwrap().kind, "no_positive_critical_point");
}

#[test]
fn input_errors_exit_1() {
    let out = run_fixture("all", "catalan", &["--direction", "1,2"]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("catalan.json") && err.contains("direction has 2 entries"), "{err}");

    let out = run_fixture("all", "catalan", &["--direction", "0"]);
    assert_eq!(out.status.code(), Some(1));

    let out = algcoef(&["all", "--input", "/nonexistent/problem.json"]);
    assert_eq!(out.status.code(), Some(1));

    let bad = temp_file("broken.json", "{\n  \"name\": \"x\",\n  \"variables\": [\"x\"\n}\n");
    let out = algcoef(&["all", "--input", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("broken.json:4:1"), "{err}");

    let bad = temp_file(
        "syntax.json",
        r#"{"name": "s", "variables": ["x"], "minimal_polynomial": "x*Y^2 - Y + + 1", "direction": ["1"]}"#,
    );
    let out = algcoef(&["all", "--input", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("minimal_polynomial"));

    let unknown = temp_file(
        "unknown.json",
        r#"{"name": "s", "variables": ["x"], "minimal_polynomial": "x*Y^2 - Y + 1", "direction": ["1"], "colour": 1}"#,
    );
    assert_eq!(algcoef(&["all", "--input", unknown.to_str().unwrap()]).status.code(), Some(1));
}

#[test]
fn tolerance_flag() {
    assert_eq!(run_fixture("all", "catalan", &["--tolerance", "0.01"]).status.code(), Some(0));
    let out = run_fixture("all", "catalan", &["--tolerance", "0.001"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("exceeds tolerance"));
}

#[test]
fn kmax_zero_has_no_correction() {
    let r = report(&run_fixture("asympt", "catalan", &["--kmax", "0"]));
    // a0 = 0 and nothing else: the expansion vanishes to depth 0.
    assert_eq!(r.failure.unwrap().kind, "expansion_vanishes");
    assert_eq!(run_fixture("asympt", "catalan", &["--kmax", "2"]).status.code(), Some(1));
}

#[test]
fn deterministic_output() {
    let a = run_fixture("all", "dissections", &[]);
    let b = run_fixture("all", "dissections", &[]);
    assert_eq!(a.stdout, b.stdout);
    let t1 = run_fixture("all", "dissections", &["--format", "text"]);
    let t2 = run_fixture("all", "dissections", &["--format", "text"]);
    assert_eq!(t1.stdout, t2.stdout);
}

#[test]
fn report_round_trips() {
    for (stage, name) in [("all", "assembly_trees"), ("critical", "bilateral_schroeder"), ("all", "ternary_tree")] {
        let out = run_fixture(stage, name, &[]);
        let r = report(&out);
        assert_eq!(r.to_json().as_bytes(), &out.stdout[..]);
        let again: Report = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(again, r);
    }
}

#[test]
fn decimal_strings_carry_enough_digits() {
    let r = report(&run_fixture("all", "callan_a3_b2", &[]));
    let a = r.asymptotics.unwrap();
    for s in [&a.rho, &a.constant, &a.minimal_point[1].re] {
        let mantissa = s.split('e').next().unwrap().replace(['-', '.'], "");
        assert!(mantissa.len() >= 30, "{s}");
    }
}

#[test]
fn out_flag_and_text_format() {
    let dest = std::env::temp_dir().join(format!("algcoef-out-{}.txt", std::process::id()));
    let out = run_fixture("all", "catalan", &["--format", "text", "--out", dest.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&dest).unwrap();
    assert!(text.contains("rho   = 4.000000000000e0 = 4"), "{text}");
    assert!(text.contains("C     = 5.641895835477e-1 = 1/sqrt(pi)"), "{text}");
}

#[test]
fn precision_env_override() {
    let path = fixture("catalan");
    let out = Command::new(env!("CARGO_BIN_EXE_algcoef"))
        .args(["critical", "--input", path.to_str().unwrap()])
        .env("ALGCOEF_PRECISION_BITS", "512")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r.critical.unwrap().points[0].precision_bits, 512);
    let out = Command::new(env!("CARGO_BIN_EXE_algcoef"))
        .args(["critical", "--input", path.to_str().unwrap()])
        .env("ALGCOEF_PRECISION_BITS", "lots")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
}
