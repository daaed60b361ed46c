use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> PathBuf {
    PathBuf::from(env!("CARGO_BIN_EXE_solcalc"))
}

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../presentations")
        .join(name)
        .display()
        .to_string()
}

fn run(args: &[&str]) -> Output {
    Command::new(bin())
        .args(args)
        .env_remove("SOLCALC_BOUND")
        .output()
        .unwrap_or_else(|e| panic!("failed to run solcalc {args:?}: {e}"))
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).to_string()
}

fn json_of(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("stdout should be valid JSON")
}

#[test]
fn invariants_dyadic_matches_golden_payload() {
    let out = run(&["invariants", &fixture("dyadic.sol"), "--json"]);
    assert!(out.status.success());
    let result = &json_of(&out)["result"];
    let golden: serde_json::Value =
        serde_json::from_str(include_str!("golden/invariants_dyadic.json")).unwrap();
    assert_eq!(result, &golden);
}

#[test]
fn bruschlinsky_dyadic_reports_z_half() {
    let out = run(&["bruschlinsky", &fixture("dyadic.sol")]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("lim(Z, x2)"), "{text}");
    assert!(text.contains("Z[1/2]"), "{text}");
    assert!(text.contains("simplicity: holds"), "{text}");
}

#[test]
fn compare_conjugate_pair() {
    let out = run(&[
        "compare",
        &fixture("ex4x.sol"),
        &fixture("ex4y.sol"),
        "--json",
    ]);
    assert!(out.status.success());
    let v = json_of(&out);
    assert_eq!(v["result"]["matrix_group_match"], false);
    assert_eq!(v["result"]["bruschlinsky_match"], true);
    assert_eq!(v["result"]["perron_roots_equal"], true);
    assert_eq!(v["result"]["left"]["matrix_level"]["eventual_rank"], 2);
    assert_eq!(v["result"]["right"]["matrix_level"]["eventual_rank"], 3);
    assert_eq!(v["inferred"], true, "ex4y carries the inferred marker");
}

#[test]
fn sign_with_oracle() {
    let out = run(&[
        "sign",
        &fixture("fibonacci.sol"),
        "--level",
        "0",
        "--vec",
        "1,-2",
        "--oracle",
        "--bound",
        "8",
        "--json",
    ]);
    assert!(out.status.success());
    let v = json_of(&out);
    assert_eq!(v["result"]["sign"], "negative");
    assert_eq!(v["result"]["oracle"]["verdict"], "negative");
    assert_eq!(v["result"]["oracle"]["bound"], 8);

    let out = run(&[
        "sign",
        &fixture("fibonacci.sol"),
        "--level",
        "0",
        "--vec",
        " 2, -3 ",
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("positive"));
}

#[test]
fn equal_identifies_dyadic_kernel() {
    let out = run(&[
        "equal",
        &fixture("dyadic.sol"),
        "--lhs",
        "0:1,0",
        "--rhs",
        "0:0,1",
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("equal: true"));

    let out = run(&[
        "equal",
        &fixture("fibonacci.sol"),
        "--lhs",
        "0:1,0",
        "--rhs",
        "0:0,1",
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("equal: false"));
}

#[test]
fn interpolate_and_bound_exhaustion() {
    let out = run(&[
        "interpolate",
        &fixture("fibonacci.sol"),
        "--a1",
        "0:1,0",
        "--a2",
        "0:0,1",
        "--b1",
        "0:2,2",
        "--b2",
        "0:2,2",
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("interpolant: 0:1,1"));

    // the dominated pair needs lifting; bound 0 must be inconclusive (exit 2)
    let out = run(&[
        "interpolate",
        &fixture("fibonacci.sol"),
        "--a1",
        "0:0,0",
        "--a2",
        "0:0,0",
        "--b1",
        "0:2,-3",
        "--b2",
        "0:2,-3",
        "--bound",
        "0",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn bound_env_var_fallback() {
    let out = Command::new(bin())
        .args([
            "interpolate",
            &fixture("fibonacci.sol"),
            "--a1",
            "0:0,0",
            "--a2",
            "0:0,0",
            "--b1",
            "0:2,-3",
            "--b2",
            "0:2,-3",
        ])
        .env("SOLCALC_BOUND", "0")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn validate_exit_codes() {
    let out = run(&["validate", &fixture("dyadic.sol")]);
    assert_eq!(out.status.code(), Some(0));

    // a sink vertex fails nondegeneracy: exit 1 with the finding reported
    let mut file = tempfile::NamedTempFile::new().unwrap();
    writeln!(
        file,
        "solenoid v1\ngraph:\nvertex u\nvertex v\nedge a u v\nedge b u v\nmap:\nvertex u -> u\nvertex v -> v\nedge a -> a\nedge b -> a"
    )
    .unwrap();
    let path = file.path().display().to_string();
    let out = run(&["validate", &path, "--json"]);
    assert_eq!(out.status.code(), Some(1));
    let v = json_of(&out);
    assert_eq!(v["result"]["all_passed"], false);
    let findings = v["findings"].as_array().unwrap();
    let nd = findings
        .iter()
        .find(|f| f["check"] == "nondegeneracy")
        .unwrap();
    assert_eq!(nd["passed"], false);
    assert_eq!(nd["items"].as_array().unwrap().len(), 2);
}

#[test]
fn tower_is_inconclusive() {
    let out = run(&["bruschlinsky", &fixture("tower_short.sol")]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stdout(&out).contains("inconclusive"));
}

#[test]
fn axioms_fibonacci() {
    let out = run(&["axioms", &fixture("fibonacci.sol"), "--json"]);
    assert!(out.status.success());
    let v = json_of(&out);
    assert_eq!(v["result"]["markov"], true);
    assert_eq!(v["result"]["flattening"]["status"], "fails");
    assert_eq!(v["result"]["nonfolding"]["status"], "holds");
    assert_eq!(v["findings"].as_array().unwrap().len(), 3);
}

#[test]
fn axioms_backtrack_witness() {
    let out = run(&["axioms", &fixture("backtrack.sol"), "--json"]);
    assert!(out.status.success());
    let v = json_of(&out);
    assert_eq!(v["result"]["nonfolding"]["status"], "fails");
    assert_eq!(v["result"]["nonfolding"]["witness"]["steps"], 0);
    // signed words: flattening reported as not evaluated, not an error
    assert_eq!(v["result"]["flattening"]["status"], "not evaluated");
}

#[test]
fn usage_errors_exit_3() {
    let out = run(&["validate", "/no/such/file.sol"]);
    assert_eq!(out.status.code(), Some(3));

    let out = run(&[
        "sign",
        &fixture("fibonacci.sol"),
        "--level",
        "0",
        "--vec",
        "1,x",
    ]);
    assert_eq!(out.status.code(), Some(3));

    let out = run(&[
        "equal",
        &fixture("fibonacci.sol"),
        "--lhs",
        "nope",
        "--rhs",
        "0:1,0",
    ]);
    assert_eq!(out.status.code(), Some(3));

    let out = run(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(3));

    // wrong vector length is a usage problem, not a crash
    let out = run(&[
        "sign",
        &fixture("fibonacci.sol"),
        "--level",
        "0",
        "--vec",
        "1,2,3",
    ]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn parse_failures_exit_1() {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    writeln!(file, "solenoid v1\ngraph:\nvertex p\nvertex p").unwrap();
    let out = run(&["validate", &file.path().display().to_string()]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("duplicate vertex"), "{err}");
    assert!(err.contains("line 4"), "{err}");
}

#[test]
fn json_documents_are_deterministic() {
    let args = ["invariants", &fixture("ex4y.sol"), "--json"];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success());
    assert_eq!(
        a.stdout, b.stdout,
        "identical inputs must give identical documents"
    );

    let v = json_of(&a);
    assert_eq!(v["tool"], "solcalc");
    assert_eq!(v["command"], "invariants");
    assert!(v["version"].is_string());
    let input = &v["inputs"][0];
    assert_eq!(input["inferred"], true);
    assert_eq!(input["sha256"].as_str().unwrap().len(), 64);
}

#[test]
fn nonstationary_rejected_where_stationary_is_required() {
    for cmd in ["invariants", "axioms"] {
        let out = run(&[cmd, &fixture("tower_short.sol")]);
        assert_eq!(out.status.code(), Some(1), "{cmd} must reject towers");
    }
}
