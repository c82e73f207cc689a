use std::path::PathBuf;
use std::process::Command;

use grasstope::cli::run_cli;
use serde_json::Value;

fn fixture(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "fixtures", name]
        .iter()
        .collect();
    p.display().to_string()
}

fn run(args: &[&str]) -> (i32, String, String) {
    let (mut out, mut err) = (String::new(), String::new());
    let argv = std::iter::once("grasstope").chain(args.iter().copied());
    let code = run_cli(argv, &mut out, &mut err);
    (code, out, err)
}

fn json(args: &[&str]) -> Value {
    let mut full = args.to_vec();
    full.push("--json");
    let (code, out, err) = run(&full);
    assert_eq!(code, 0, "{args:?}: {err}");
    serde_json::from_str(&out).unwrap_or_else(|e| panic!("{args:?}: {e}\n{out}"))
}

fn validator() -> jsonschema::Validator {
    let schema: Value = serde_json::from_str(grasstope::report::SCHEMA).unwrap();
    jsonschema::validator_for(&schema).unwrap()
}

fn assert_valid(v: &Value) {
    let errors: Vec<String> = validator()
        .iter_errors(v)
        .map(|e| format!("{e} at {}", e.instance_path))
        .collect();
    assert!(errors.is_empty(), "{}: {errors:#?}", v["kind"]);
}

#[test]
fn classify_prints_the_verdict_and_certificate() {
    let (code, out, _) = run(&["classify", &fixture("ex41.mat")]);
    assert_eq!(code, 0);
    assert!(out.starts_with("TAME\n"), "{out}");
    assert!(out.contains("q = (1, 0, 0)"));
    assert!(out.contains("certificate verified"));
}

#[test]
fn classify_json_reports_the_kernel_witness() {
    let v = json(&["classify", &fixture("ex43.mat")]);
    assert_eq!(v["kind"], "classify");
    assert_eq!(v["verdict"], "rational");
    assert_eq!(v["kernel_witness"], serde_json::json!([1, 1, 1, 1, 1, 1]));
    assert_eq!(v["verified"], true);
    assert_valid(&v);
}

#[test]
fn tables_row_prints_min_and_max() {
    let (code, out, err) = run(&["tables", "--row", "2,6"]);
    assert_eq!(code, 0, "{err}");
    assert!(out.contains("min 10 max 16"), "{out}");
    assert!(out.contains("[matches]"));
}

#[test]
fn tables_out_of_budget_is_a_domain_error() {
    let (code, _, err) = run(&["tables", "--table", "2", "--row", "3,8"]);
    assert_eq!(code, 1);
    assert!(err.contains("budget"), "{err}");
}

#[test]
fn tables_with_a_class_dependent_row() {
    let v = json(&["tables", "--table", "1", "--row", "3,7"]);
    let row = &v["rows"][0];
    assert_eq!(row["min"], Value::Null);
    assert_eq!(row["range"][1], 42);
    assert_eq!(row["classes"], 11);
    assert_valid(&v);
}

#[test]
fn member_and_regions() {
    let v = json(&["member", &fixture("ex43.mat"), "--point", "1 0 2"]);
    assert_eq!(v["in_closed_set"], true);
    assert_valid(&v);
    let (code, out, _) = run(&["member", &fixture("ex41.mat"), "--point", "0 0 1"]);
    assert_eq!(code, 0);
    assert!(out.contains("not in the grasstope"), "{out}");

    let v = json(&["regions", &fixture("vandermonde6.mat")]);
    assert_eq!(
        (v["total"].as_u64(), v["selected"].as_u64()),
        (Some(16), Some(10))
    );
    assert_valid(&v);
    let v = json(&["regions", &fixture("vandermonde6_neg24.mat"), "--selected"]);
    assert_eq!(v["regions"].as_array().unwrap().len(), 16);
}

#[test]
fn euler_and_wedge() {
    let v = json(&["euler", &fixture("ex43.mat")]);
    assert_eq!(v["euler"], 0);
    assert_valid(&v);
    let v = json(&["wedge", &fixture("ex42.mat")]);
    assert_eq!(
        (v["rows"].as_u64(), v["cols"].as_u64()),
        (Some(15), Some(3))
    );
    assert_eq!(v["matrix"][3], serde_json::json!([2, 2, 0]));
    assert_valid(&v);
    let (_, out, _) = run(&["wedge", &fixture("sec5.mat"), "-k", "3"]);
    assert_eq!(out, "4 0\n1\n4\n3\n2\n");
}

#[test]
fn matroid_queries() {
    let sec5 = fixture("sec5.mat");
    let v = json(&["matroid", "circuits", "--matrix", &sec5]);
    assert_eq!(v["sign_vectors"], serde_json::json!(["+-+-"]));
    assert_valid(&v);
    let v = json(&["matroid", "circuits", "--chirotope", &fixture("sec5.chi")]);
    assert_eq!(v["sign_vectors"], serde_json::json!(["+-+-"]));
    let v = json(&[
        "matroid",
        "cocircuits",
        "--chirotope",
        &fixture("sec5.chi"),
        "--check-axioms",
    ]);
    assert_eq!(v["count"], 6);
    let v = json(&["matroid", "topes", "--matrix", &sec5]);
    assert_eq!(v["count"], 7);
    let v = json(&[
        "matroid",
        "grasstope",
        "--matrix",
        &sec5,
        "--reading",
        "4 3 2 1",
    ]);
    assert_eq!(v["count"], 3);
    assert_eq!(v["order"], serde_json::json!([4, 3, 2, 1]));
    assert_valid(&v);
    let v = json(&["matroid", "covectors", "--twistor", &fixture("ex41.mat")]);
    assert_eq!(v["n"], 5);
}

#[test]
fn cocircuit_files_drive_the_same_sweep() {
    let dir = tempfile::tempdir().unwrap();
    let c = grasstope::tables::positive_chirotope(2, 6).unwrap();
    let list = grasstope::format::CocircuitList {
        rank: 3,
        n: 6,
        cocircuits: c.cocircuits(),
    };
    let coc = dir.path().join("tp.coc");
    std::fs::write(&coc, grasstope::format::write_cocircuits(&list)).unwrap();
    let chi = dir.path().join("tp.chi");
    std::fs::write(
        &chi,
        grasstope::format::write_chirotope(&c, grasstope::format::BasisOrder::Colex),
    )
    .unwrap();
    let a = json(&["sweep", "--cocircuits", coc.to_str().unwrap()]);
    let b = json(&[
        "sweep",
        "--chirotope",
        chi.to_str().unwrap(),
        "--threads",
        "2",
    ]);
    let p = json(&["sweep", "--positive", "2,6", "--threads", "1"]);
    assert_eq!(a["record"], b["record"]);
    assert_eq!(a["record"], p["record"]);
    assert_eq!(
        (a["record"]["min"].as_u64(), a["record"]["max"].as_u64()),
        (Some(10), Some(16))
    );
    assert_eq!(a["record"]["bounds"]["satisfied"], true);
    assert_valid(&a);
}

#[test]
fn sampled_sweeps_are_seeded() {
    let a = json(&[
        "sweep",
        "--positive",
        "3,9",
        "--samples",
        "200",
        "--seed",
        "3",
    ]);
    let b = json(&[
        "sweep",
        "--positive",
        "3,9",
        "--samples",
        "200",
        "--seed",
        "3",
    ]);
    assert_eq!(a, b);
    assert_eq!(a["sampled"]["bounds"]["satisfied"], true);
    assert_valid(&a);
    let (code, _, err) = run(&["sweep", "--positive", "3,9"]);
    assert_eq!(code, 1);
    assert!(err.contains("raise the configuration budget"), "{err}");
}

#[test]
fn census_and_enumeration() {
    let v = json(&["census", "2", "6"]);
    assert_eq!(v["classes"].as_array().unwrap().len(), 4);
    assert_eq!(v["class_independent"], serde_json::json!([10, 16]));
    assert_valid(&v);
    let v = json(&["enumerate-om", "3", "7"]);
    assert_eq!(v["count"], 11);
    assert_valid(&v);
    let (code, _, err) = run(&["enumerate-om", "4", "8"]);
    assert_eq!(code, 1);
    assert!(err.contains("out of bounds"), "{err}");
}

#[test]
fn svg_summary() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("tame.svg");
    let v = json(&[
        "svg",
        &fixture("ex41.mat"),
        "--chart",
        "-4 0 1; 0 1 0; 0 0 1",
        "-o",
        out.to_str().unwrap(),
    ]);
    assert_eq!(
        (v["lines"].as_u64(), v["shaded_topes"].as_u64()),
        (Some(5), Some(5))
    );
    assert_valid(&v);
    assert!(std::fs::read_to_string(out).unwrap().starts_with("<?xml"));
    let (code, _, err) = run(&[
        "svg",
        &fixture("ex41.mat"),
        "--chart",
        "0 0 1; 0 1 0; 1 0 0",
    ]);
    assert_eq!(code, 1);
    assert!(err.contains("--allow-unbounded"), "{err}");
    let (code, _, _) = run(&[
        "svg",
        &fixture("ex41.mat"),
        "--chart",
        "0 0 1; 0 1 0; 1 0 0",
        "--allow-unbounded",
    ]);
    assert_eq!(code, 0);
}

#[test]
fn errors_and_exit_codes() {
    let (code, _, err) = run(&["classify", "--frobnicate", &fixture("ex41.mat")]);
    assert_eq!(code, 2, "{err}");
    let (code, _, _) = run(&["no-such-command"]);
    assert_eq!(code, 2);
    let (code, _, err) = run(&["classify", "/nonexistent/z.mat"]);
    assert_eq!(code, 1);
    assert!(err.starts_with("error: "), "{err}");

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.mat");
    std::fs::write(&bad, "1 0 0\n0 1/0 0\n").unwrap();
    let (code, out, err) = run(&["classify", bad.to_str().unwrap(), "--json"]);
    assert_eq!(code, 1);
    assert!(err.contains(":2:3:"), "{err}");
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(
        (v["kind"].as_str(), v["line"].as_u64(), v["column"].as_u64()),
        (Some("error"), Some(2), Some(3))
    );
    assert_valid(&v);

    let (code, out, _) = run(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("enumerate-om"));
}

#[test]
fn the_binary_uses_the_same_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_grasstope");
    let ok = Command::new(bin)
        .args(["classify", &fixture("ex41.mat")])
        .output()
        .unwrap();
    assert_eq!(ok.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&ok.stdout).starts_with("TAME"));
    let usage = Command::new(bin).args(["classify"]).output().unwrap();
    assert_eq!(usage.status.code(), Some(2));
    let domain = Command::new(bin)
        .args(["classify", "/nonexistent"])
        .output()
        .unwrap();
    assert_eq!(domain.status.code(), Some(1));
}
