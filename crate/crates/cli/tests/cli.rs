use std::path::{Path, PathBuf};
use std::process::Command;

use proptest::prelude::*;
use sgcert_cli::commands::{self, Settings, Target};
use sgcert_cli::expr::Kind;
use sgcert_cli::report::{reverify, Body};
use sgcert_cli::{Outcome, Report};

fn root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn run(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_sgcert"))
        .args(args)
        .current_dir(root())
        .output()
        .expect("binary runs");
    (
        out.status.code().expect("exit code"),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn run_json(args: &[&str]) -> (i32, Report) {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    let (code, out, err) = run(&all);
    let report = Report::from_json(&out).unwrap_or_else(|e| panic!("{e}: {out}{err}"));
    (code, report)
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("sgcert-cli-tests-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn check_reports_dimensions() {
    for (file, dim) in [("K", 1), ("dualnum", 2), ("A", 7), ("Aprime", 4), ("Adoubleprime", 7)] {
        let (code, r) = run_json(&["check", &format!("fixtures/{file}.alg")]);
        assert_eq!(code, 0);
        let Body::Check(c) = r.body else { panic!() };
        assert_eq!(c.dim, dim, "{file}");
        assert!(c.checks.iter().all(|c| c.passed));
    }
}

#[test]
fn malformed_relation_is_an_input_error_with_location() {
    let text = std::fs::read_to_string(root().join("fixtures/A.alg")).unwrap();
    let bad = scratch("bad.alg");
    std::fs::write(&bad, text.replace("\"b*a\"]", "\"b*a\", \"a*q\"]")).unwrap();
    let (code, out, err) = run(&["check", bad.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(out.is_empty());
    let line = text.lines().position(|l| l.contains("\"b*a\"")).unwrap() + 1;
    assert!(err.contains(&format!("bad.alg:{line}:")), "{err}");
    assert!(err.contains("a*q"), "{err}");
}

#[test]
fn missing_files_and_bad_flags_exit_2() {
    assert_eq!(run(&["check", "fixtures/nope.alg"]).0, 2);
    assert_eq!(run(&["resolve", "fixtures/A.alg", "--simple", "7"]).0, 2);
    assert_eq!(run(&["resolve", "fixtures/A.alg"]).0, 2);
    assert_eq!(run(&["frobnicate"]).0, 2);
}

#[test]
fn resolve_examples() {
    let (code, r) = run_json(&["resolve", "fixtures/A.alg", "--simple", "2"]);
    assert_eq!(code, 0);
    let Body::Resolve(b) = &r.body else { panic!() };
    assert_eq!(b.pd.display, "Finite(1)");

    let (code, r) = run_json(&["resolve", "fixtures/A.alg", "--injective", "2"]);
    assert_eq!(code, 0);
    let Body::Resolve(b) = &r.body else { panic!() };
    assert!(b.pd.certificate.is_some());

    let (code, r) = run_json(&["resolve", "fixtures/dualnum.alg", "--simple", "1", "--bound", "3"]);
    assert_eq!(code, 0);
    let Body::Resolve(b) = &r.body else { panic!() };
    let cert = b.pd.certificate.as_ref().unwrap();
    assert_eq!((cert.j, cert.k), (0, 1));

    let (code, r) = run_json(&["resolve", "fixtures/A.alg", "fixtures/S2_over_A.mod"]);
    assert_eq!(code, 0);
    let Body::Resolve(b) = &r.body else { panic!() };
    assert_eq!(b.pd.display, "Finite(1)");

    let (code, r) = run_json(&["resolve", "fixtures/A.alg", "--injective", "2", "--bound", "1"]);
    assert_eq!(code, 1);
    assert_eq!(r.outcome, Outcome::Unknown);
}

#[test]
fn gorenstein_examples() {
    for (file, status, gdim) in [
        ("A", "not_gorenstein", None),
        ("Adoubleprime", "gorenstein", Some(1)),
        ("dualnum", "gorenstein", Some(0)),
        ("Aprime", "not_gorenstein", None),
    ] {
        let (code, r) = run_json(&["gorenstein", &format!("fixtures/{file}.alg")]);
        assert_eq!(code, 0, "{file}");
        let Body::Gorenstein(g) = r.body else { panic!() };
        assert_eq!((g.status.as_str(), g.gdim), (status, gdim), "{file}");
        assert!(g.agreement.iter().all(|a| a.consistent));
    }
}

#[test]
fn schur_examples() {
    let (code, r) = run_json(&["schur", "fixtures/A.alg", "--idempotent", "1", "--compare", "fixtures/dualnum.alg"]);
    assert_eq!(code, 0);
    let Body::Schur(s) = &r.body else { panic!() };
    assert_eq!(s.report.status, "conclusive");
    assert!(s.report.conclusion.as_deref().unwrap().starts_with("D_sg(A) ≃ D_sg("));
    assert!(s.report.decorations.iter().any(|d| d.starts_with("K-mod-like")));
    assert!(s.iso.as_ref().unwrap().found);

    let (code, r) = run_json(&["schur", "fixtures/A.alg", "--idempotent", "2"]);
    assert_eq!(code, 0);
    let Body::Schur(s) = &r.body else { panic!() };
    assert_eq!(s.report.status, "inconclusive");
    assert!(s.report.conclusion.is_none());

    let (code, r) = run_json(&["schur", "fixtures/Adoubleprime.alg", "--idempotent", "1"]);
    assert_eq!(code, 0);
    let Body::Schur(s) = &r.body else { panic!() };
    assert_eq!(s.report.status, "conclusive");
    assert!(s.report.decorations.iter().any(|d| d.starts_with("K-mod-like")));
}

#[test]
fn triangular_examples() {
    let (code, r) = run_json(&[
        "triangular", "--upper", "fixtures/K.alg", "fixtures/dualnum.alg", "fixtures/Aprime_upper.bim",
        "--compare", "fixtures/Aprime.alg",
    ]);
    assert_eq!(code, 0);
    let Body::Triangular(t) = &r.body else { panic!() };
    let g = t.gorenstein.as_ref().unwrap();
    assert_eq!(g.verdict, "not_gorenstein");
    assert_eq!(g.witness.as_deref(), Some("right"));
    assert_eq!(t.report.status, "conclusive");
    assert!(t.iso.as_ref().unwrap().found);

    let (code, r) = run_json(&[
        "triangular", "--lower", "fixtures/K.alg", "fixtures/dualnum.alg", "fixtures/Adoubleprime_lower.bim",
        "--compare", "fixtures/Adoubleprime.alg",
    ]);
    assert_eq!(code, 0);
    let Body::Triangular(t) = &r.body else { panic!() };
    let g = t.gorenstein.as_ref().unwrap();
    assert_eq!(g.verdict, "gorenstein");
    assert_eq!(g.bounds, (0, 1));
    let d = g.direct.gdim.unwrap();
    assert!(g.bounds.0 <= d && d <= g.bounds.1);
    assert_eq!(t.report.status, "conclusive");
    assert_eq!(t.report.target, "D");
}

#[test]
fn zero_bimodule_gives_the_larger_dimension() {
    let zero = scratch("zero.bim");
    std::fs::write(&zero, "labels = []\n").unwrap();
    let (code, r) = run_json(&[
        "triangular", "--upper", "fixtures/Adoubleprime.alg", "fixtures/dualnum.alg", zero.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    let Body::Triangular(t) = &r.body else { panic!() };
    let g = t.gorenstein.as_ref().unwrap();
    assert_eq!(g.verdict, "gorenstein");
    assert_eq!(g.direct.gdim, Some(1));
    assert_eq!(g.bounds.0, 1);
}

#[test]
fn non_gorenstein_corner_skips_the_criterion() {
    let zero = scratch("zero2.bim");
    std::fs::write(&zero, "labels = []\n").unwrap();
    let (code, r) = run_json(&["triangular", "--upper", "fixtures/A.alg", "fixtures/K.alg", zero.to_str().unwrap()]);
    assert_eq!(code, 0);
    let Body::Triangular(t) = &r.body else { panic!() };
    assert!(t.gorenstein.is_none());
    assert!(t.precondition.is_some());
}

#[test]
fn json_is_byte_identical_and_reverifies() {
    let args = ["--json", "--seed", "3", "schur", "fixtures/A.alg", "--idempotent", "1", "--compare", "fixtures/dualnum.alg"];
    let (_, first, _) = run(&args);
    let (_, second, _) = run(&args);
    assert_eq!(first, second);
    let saved = scratch("schur.json");
    std::fs::write(&saved, &first).unwrap();
    let (code, out, _) = run(&["verify", saved.to_str().unwrap()]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("0 failed"));
}

#[test]
fn tampered_certificates_fail_verification() {
    let (_, out, _) = run(&["--json", "gorenstein", "fixtures/A.alg"]);
    let mut value: serde_json::Value = serde_json::from_str(&out).unwrap();
    let m = value
        .pointer_mut("/body/gorenstein/right/1/certificate/matrix")
        .expect("a periodicity certificate");
    let (rows, cols) = (m["rows"].as_u64().unwrap() as usize, m["cols"].as_u64().unwrap() as usize);
    m["entries"] = serde_json::json!(vec![vec!["0"; cols]; rows]);
    let saved = scratch("tampered.json");
    std::fs::write(&saved, serde_json::to_string(&value).unwrap()).unwrap();
    let (code, out, _) = run(&["verify", saved.to_str().unwrap()]);
    assert_eq!(code, 3, "{out}");

    let mut value: serde_json::Value = serde_json::from_str(&out_of(&["--json", "gorenstein", "fixtures/A.alg"])).unwrap();
    value["inputs"][0]["sha256"] = serde_json::json!("00");
    std::fs::write(&saved, serde_json::to_string(&value).unwrap()).unwrap();
    assert_eq!(run(&["verify", saved.to_str().unwrap()]).0, 2);
}

fn out_of(args: &[&str]) -> String {
    run(args).1
}

fn settings(field: Option<u64>, seed: u64) -> Settings {
    Settings {
        field: field.map(|p| sgcert::exactla::Field::prime(p).unwrap()),
        seed,
        base: root(),
        ..Settings::default()
    }
}

const FIXTURES: [&str; 5] = ["K", "dualnum", "A", "Aprime", "Adoubleprime"];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn resolve_reports_round_trip_and_reverify(
        fixture in 0..5usize,
        kind in prop_oneof![Just(Kind::Simple), Just(Kind::Projective), Just(Kind::Injective)],
        vertex in 1..3usize,
        prime in proptest::option::of(prop_oneof![Just(11u64), Just(101)]),
        seed in 0..1000u64,
    ) {
        let file = format!("fixtures/{}.alg", FIXTURES[fixture]);
        let vertex = if fixture < 2 { 1 } else { vertex };
        let s = settings(prime, seed);
        let report = commands::resolve_cmd(&s, &file, &Target::Standard(kind, vertex.to_string())).unwrap();
        let back = Report::from_json(&report.to_json()).unwrap();
        prop_assert_eq!(&back, &report);
        let check = reverify(&back, &root()).unwrap();
        prop_assert!(check.passed(), "{:?}", check.failures);
        prop_assert_eq!(check.checked, 1);
    }

    #[test]
    fn reports_do_not_depend_on_the_seed_beyond_certificates(seed in 0..1000u64, vertex in 1..3usize) {
        let a = commands::schur_cmd(&settings(None, seed), "fixtures/A.alg", &[vertex.to_string()], None).unwrap();
        let b = commands::schur_cmd(&settings(None, seed + 1), "fixtures/A.alg", &[vertex.to_string()], None).unwrap();
        let (Body::Schur(x), Body::Schur(y)) = (&a.body, &b.body) else { unreachable!() };
        prop_assert_eq!(&x.report.status, &y.report.status);
        prop_assert_eq!(&x.report.conclusion, &y.report.conclusion);
        prop_assert_eq!(a.outcome, b.outcome);
        prop_assert!(reverify(&a, &root()).unwrap().passed());
    }
}
