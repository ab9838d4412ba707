mod common;

use std::fs;
use std::process::Command;

use common::data;
use tancone::algschemes::{gen_scheme_ideal, quadratic_obstruction, ObstructionOutcome, SchemeKind};
use tancone::formats::{parse_algebra, parse_basis, parse_curve, parse_ideal, parse_map};
use tancone::polyring::{ints, CurveGerm};

fn tancone(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_tancone")).args(args).output().unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn path(name: &str) -> String {
    data(name).to_string_lossy().into_owned()
}

#[test]
fn imult_cusp_line() {
    let (code, out, _) = tancone(&["imult", "--ideal", &path("cusp.id"), "--curve", &path("line.cv"), "--trunc", "6"]);
    assert_eq!(code, 0);
    assert!(out.lines().any(|l| l == "multiplicity = 3"), "{out}");
}

#[test]
fn curve3_parabola_emits_the_parabola() {
    let dir = tempfile::tempdir().unwrap();
    let emitted = dir.path().join("g.cv");
    let (code, out, _) = tancone(&[
        "curve3",
        "--ideal",
        &path("parabola.id"),
        "--v",
        "1,0",
        "--trunc",
        "8",
        "--emit",
        emitted.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    assert!(out.contains("gamma: 0,1\n"), "{out}");
    assert!(out.contains("contact ≥ 9 (above truncation)\n"), "{out}");
    let curve = parse_curve(&fs::read_to_string(&emitted).unwrap()).unwrap();
    let expected = CurveGerm::from_taylor(8, &[ints(&[0, 0]), ints(&[1, 0]), ints(&[0, 1])]).unwrap();
    assert_eq!(curve, expected);
}

#[test]
fn dimcheck_instance() {
    let (code, out, _) = tancone(&["dimcheck", "--d", "4", "--r", "5"]);
    assert_eq!((code, out.as_str()), (0, "20 = 20 : identity holds\n"));
}

#[test]
fn cone_test_failure_exits_1() {
    let (code, out, _) = tancone(&["conetest", "--ideal", &path("node.id"), "--v", "1,2"]);
    assert_eq!(code, 1);
    assert!(out.contains("verdict: fail\n") && out.contains("witness: 0,0,3\n"), "{out}");
    let (code, out, _) = tancone(&["conetest", "--ideal", &path("node.id"), "--v", "2,2"]);
    assert_eq!(code, 0);
    assert!(out.contains("verdict: pass\n"));
    let (code, out, _) = tancone(&["curve3", "--ideal", &path("node.id"), "--v", "1,2"]);
    assert_eq!(code, 1);
    assert!(out.contains("cone test failed"));
}

#[test]
fn input_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.id");
    fs::write(&bad, "vars 2\n# fine so far\ngen x1^^2\n").unwrap();
    let (code, _, err) = tancone(&["tspace", "--ideal", bad.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("line 3"), "{err}");

    let (code, _, _) = tancone(&["tspace", "--ideal", &path("cusp.id"), "--frobnicate"]);
    assert_eq!(code, 2);
    let (code, _, _) = tancone(&["imult", "--ideal", &path("cusp.id")]);
    assert_eq!(code, 2);
    // direction outside the tangent space is a violated precondition
    let (code, _, err) = tancone(&["conetest", "--ideal", &path("parabola.id"), "--v", "0,1"]);
    assert_eq!(code, 2);
    assert!(err.contains("tangent space"), "{err}");
    let (code, _, _) = tancone(&["conetest", "--ideal", &path("node.id"), "--v", "1,x"]);
    assert_eq!(code, 2);
}

#[test]
fn reports_are_deterministic() {
    for args in [
        vec!["thm1", "--algebra", &path("d2r1.alg")],
        vec!["spaces", "--algebra", &path("d2r1.alg")],
        vec!["corollary", "--algebra", &path("corollary_d4.alg"), "--pairs", "1-2,2-1,3-4,4-3"],
    ] {
        let args: Vec<&str> = args.iter().map(|s| s.as_ref()).collect();
        let a = tancone(&args);
        let b = tancone(&args);
        assert_eq!(a, b);
    }
}

#[test]
fn algebra_subcommands() {
    let (code, out, _) = tancone(&["chain", "--algebra", &path("d3r1.alg"), "--map", &path("f11_bad.map")]);
    assert_eq!(code, 1);
    assert!(out.contains("stage: co\n"), "{out}");
    let (code, out, _) = tancone(&["chain", "--algebra", &path("d3r1.alg"), "--map", &path("f11_square.map")]);
    assert_eq!(code, 0);
    assert!(out.contains("f12 kernel dim: 0\n") && out.contains("g22 symmetric: true\n"), "{out}");

    let (code, out, _) =
        tancone(&["corollary", "--algebra", &path("corollary_d4.alg"), "--pairs", "1-2,2-1,3-4,4-3"]);
    assert_eq!(code, 0);
    assert!(out.contains("forces f = 0: true\n"), "{out}");
    let (code, _, err) = tancone(&["corollary", "--algebra", &path("corollary_d4.alg"), "--pairs", "1-3,2-1,3-4,4-3"]);
    assert_eq!(code, 2);
    assert!(err.contains("nonzero"), "{err}");

    let (code, out, _) = tancone(&["thm1", "--algebra", &path("corollary_d4.alg")]);
    assert_eq!(code, 0);
    assert!(out.contains("verdict: holds (quadratic)\n"), "{out}");
    let (code, out, _) = tancone(&["thm1", "--algebra", &path("d2r1.alg")]);
    assert_eq!(code, 1);
    assert!(out.contains("verdict: fails\n"), "{out}");
}

#[test]
fn emitted_files_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let p = |n: &str| dir.path().join(n).to_string_lossy().into_owned();

    let (code, _, _) = tancone(&["scheme-gen", "--n", "2", "--kind", "nilp3", "--emit", &p("s.id")]);
    assert_eq!(code, 0);
    let parsed = parse_ideal(&fs::read_to_string(p("s.id")).unwrap()).unwrap();
    assert_eq!(parsed, gen_scheme_ideal(2, SchemeKind::Nilp3).unwrap());

    let (code, out, _) = tancone(&["scheme-tangent", "--algebra", &path("d2r1.alg"), "--emit", &p("t.basis")]);
    assert_eq!(code, 0);
    let basis = parse_basis(&fs::read_to_string(p("t.basis")).unwrap()).unwrap();
    assert!(out.contains(&format!("dim: {}\n", basis.dim())));

    // the table itself is a first-order deformation with a second-order term
    let alg = parse_algebra(&fs::read_to_string(data("d2r1.alg")).unwrap()).unwrap();
    fs::write(p("self.map"), tancone::formats::emit_map(alg.table())).unwrap();
    let (code, _, _) = tancone(&["obstruct", "--algebra", &path("d2r1.alg"), "--map", &p("self.map"), "--emit", &p("star.map")]);
    assert_eq!(code, 0);
    let star = parse_map(&fs::read_to_string(p("star.map")).unwrap()).unwrap();
    match quadratic_obstruction(&alg, alg.table()).unwrap() {
        ObstructionOutcome::Feasible(s) => assert_eq!(star, s),
        ObstructionOutcome::Infeasible => panic!("expected a solution"),
    }
}
