use std::path::PathBuf;
use std::process::{Command, Output, Stdio};
use std::io::Write;

use antidual::completion::{complement, IncompleteBlockSystem};
use antidual::json::{hermitian_to_json, matrix_to_json, parse_hermitian};
use antidual::lebesgue::lebesgue_decompose;
use antidual::matrix::Hermitian;
use antidual::psd::make_psd;
use antidual::sample;
use antidual::tolerance::TolerancePolicy;
use serde_json::{json, Value};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_antidual"))
}

fn write(name: &str, v: &Value) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("cli-tests");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, v.to_string()).unwrap();
    path
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn run_stdin(args: &[&str], input: &Value) -> Output {
    let mut child = bin()
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(input.to_string().as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn report(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn matrix(v: &Value) -> Hermitian {
    parse_hermitian(v).unwrap()
}

fn close(v: &Value, expected: &[f64], n: usize) -> bool {
    matrix(v).approx_eq(&Hermitian::from_real(n, expected), 1e-9)
}

#[test]
fn complement_of_identities() {
    let id = write("id2.json", &json!([[1, 0], [0, 1]]));
    let id = id.to_str().unwrap();
    let r = report(&run(&["complement", "--a", id, "--b", id]));
    assert_eq!(r["command"], "complement");
    assert_eq!(r["completable"], true);
    assert!(close(&r["complement"], &[1.0, 0.0, 0.0, 1.0], 2));
    assert_eq!(r["policy"]["eqTol"], 1e-8);
}

#[test]
fn complement_probes_and_schur() {
    let doc = json!({
        "a": [[1, 0], [0, 1]],
        "b": [[1, 0], [0, 1]],
        "c": [[2, 0], [0, 3]],
        "probes": [[[1, 0], [0, 0]], [1, 1]],
    });
    let r = report(&run_stdin(&["complement", "--input", "-"], &doc));
    let constants = r["bestConstants"].as_array().unwrap();
    assert_eq!(constants.len(), 2);
    assert!((constants[0]["value"].as_f64().unwrap() - 1.0).abs() < 1e-12);
    assert!((constants[1]["value"].as_f64().unwrap() - 2.0).abs() < 1e-12);
    assert_eq!(r["blockPsd"], true);
    assert!(close(&r["schur"], &[1.0, 0.0, 0.0, 2.0], 2));

    let r = report(&run_stdin(&["schur", "-i", "-"], &doc));
    assert!(close(&r["schur"], &[1.0, 0.0, 0.0, 2.0], 2));
}

#[test]
fn schur_rejects_non_positive_block() {
    let doc = json!({ "a": [[1, 0], [0, 1]], "b": [[2, 0], [0, 2]], "c": [[1, 0], [0, 1]] });
    let out = run_stdin(&["schur", "-i", "-"], &doc);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn incompletable_system_exits_one() {
    let doc = json!({ "a": [[1, 0], [0, 0]], "b": [[0, 0], [0, 1]] });
    let out = run_stdin(&["complement", "-i", "-"], &doc);
    assert_eq!(out.status.code(), Some(1));
    assert!(out.stdout.is_empty());
    assert!(String::from_utf8_lossy(&out.stderr).contains("not completable"));
}

#[test]
fn pardiff_of_equal_operators_is_undefined() {
    let a = write("pardiff-a.json", &json!([[1, 0], [0, 1]]));
    let a = a.to_str().unwrap();
    let out = run(&["pardiff", "--b", a, "--a", a]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("parallel difference is undefined"));

    let half = write("pardiff-half.json", &json!([[0.5, 0], [0, 0.5]]));
    let r = report(&run(&["pardiff", "--b", half.to_str().unwrap(), "--a", a]));
    assert!(close(&r["parallelDifference"], &[1.0, 0.0, 0.0, 1.0], 2));
}

#[test]
fn parallel_sums() {
    let doc = json!({ "a": [[1, 0], [0, 1]], "b": [[1, 0], [0, 1]] });
    let r = report(&run_stdin(&["parsum", "-i", "-"], &doc));
    assert!(close(&r["parallelSum"], &[0.5, 0.0, 0.0, 0.5], 2));
    let doc = json!({ "a": [[1, 0], [0, 1]], "b": [[1, 0], [0, 0]], "weight": 3.0 });
    let r = report(&run_stdin(&["parsum", "-i", "-"], &doc));
    assert!(close(&r["parallelSum"], &[0.75, 0.0, 0.0, 0.0], 2));
    let r = report(&run_stdin(&["parsum", "-i", "-", "--weight", "1"], &doc));
    assert!(close(&r["parallelSum"], &[0.5, 0.0, 0.0, 0.0], 2));
}

#[test]
fn lebesgue_split_of_ones() {
    let a = write("ones2.json", &json!([[1, 1], [1, 1]]));
    let b = write("diag10.json", &json!([[1, 0], [0, 0]]));
    let r = report(&run(&["lebesgue", "--a", a.to_str().unwrap(), "--b", b.to_str().unwrap()]));
    assert!(close(&r["regular"], &[0.0; 4], 2));
    assert!(close(&r["singular"], &[1.0, 1.0, 1.0, 1.0], 2));
    assert_eq!(r["routes"]["converged"], true);
    assert!(r["iterations"].as_u64().is_some());
    assert_eq!(r["mutuallySingular"], true);
}

#[test]
fn kv_extension() {
    let doc = json!({ "ambientDim": 2, "domainBasis": [[1], [0]], "values": [[1], [1]] });
    let r = report(&run_stdin(&["kvext", "-i", "-"], &doc));
    assert!(close(&r["extension"], &[1.0, 1.0, 1.0, 1.0], 2));
    assert_eq!(r["domainDim"], 1);

    let v = write("kv-v.json", &json!([[1], [0]]));
    let w = write("kv-w.json", &json!([[0], [1]]));
    let out = run(&["kvext", "--v", v.to_str().unwrap(), "--w", w.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn algebra_commands() {
    let c2 = json!({
        "envDim": 2,
        "basis": [[[1, 0], [0, 0]], [[0, 0], [0, 1]]],
        "unital": true,
    });
    let doc = json!({ "algebra": c2, "f": { "values": [1, 1] }, "g": { "values": [1, 0] } });
    let r = report(&run_stdin(&["alg-gns", "-i", "-"], &doc));
    assert_eq!(r["hilbertDim"], 2);
    assert!((r["cyclicNormSq"].as_f64().unwrap() - 2.0).abs() < 1e-12);
    assert_eq!(r["repMatrices"].as_array().unwrap().len(), 2);

    let r = report(&run_stdin(&["alg-complement", "-i", "-"], &doc));
    let h: Vec<f64> = r["complement"]["values"].as_array().unwrap().iter().map(|z| z[0].as_f64().unwrap()).collect();
    assert!((h[0] - 1.0).abs() < 1e-12 && h[1].abs() < 1e-12);

    let r = report(&run_stdin(&["alg-lebesgue", "-i", "-"], &doc));
    let reg: Vec<f64> = r["regular"]["values"].as_array().unwrap().iter().map(|z| z[0].as_f64().unwrap()).collect();
    assert!((reg[0] - 1.0).abs() < 1e-9 && reg[1].abs() < 1e-9);

    let bad = json!({ "algebra": doc["algebra"], "f": [-1, 0] });
    assert_eq!(run_stdin(&["alg-gns", "-i", "-"], &bad).status.code(), Some(1));
}

#[test]
fn input_errors_exit_two() {
    let out = run(&["complement", "--a", "/nonexistent/a.json", "--b", "/nonexistent/b.json"]);
    assert_eq!(out.status.code(), Some(2));
    let broken = write("broken.json", &json!("not a matrix"));
    let out = run(&["parsum", "--a", broken.to_str().unwrap(), "--b", broken.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let out = run_stdin(&["parsum", "-i", "-"], &json!({ "a": [[1, 0], [0, 1]], "b": [[1]] }));
    assert_eq!(out.status.code(), Some(2));
    let out = run_stdin(&["parsum", "-i", "-"], &json!({ "a": [[1, 2], [0, 1]], "b": [[1, 0], [0, 1]] }));
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["parsum", "--tol-eq", "-1"]).status.code(), Some(2));
}

#[test]
fn non_positive_operand_is_a_domain_error() {
    let out = run_stdin(&["parsum", "-i", "-"], &json!({ "a": [[1, 0], [0, -1]], "b": [[1, 0], [0, 1]] }));
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn tolerance_flags_are_reported() {
    let doc = json!({ "a": [[1, 0], [0, 1]], "b": [[1, 0], [0, 1]] });
    let r = report(&run_stdin(
        &["parsum", "-i", "-", "--tol-psd", "1e-7", "--tol-rank", "1e-12", "--tol-eq", "1e-6", "--tol-lim", "1e-8"],
        &doc,
    ));
    assert_eq!(r["policy"], json!({ "psdTol": 1e-7, "rankTol": 1e-12, "eqTol": 1e-6, "limTol": 1e-8 }));
}

#[test]
fn emitted_matrices_round_trip() {
    let pol = TolerancePolicy::default();
    let mut rng = sample::rng(11);
    for _ in 0..10 {
        let n = sample::dim(5, &mut rng);
        let a = sample::psd_any_rank(n, &mut rng);
        let b = sample::psd_any_rank(n, &mut rng);
        let doc = json!({ "a": hermitian_to_json(&a), "b": hermitian_to_json(&b) });
        let (pa, pb) = (make_psd(&a, &pol).unwrap(), make_psd(&b, &pol).unwrap());

        let r = report(&run_stdin(&["lebesgue", "-i", "-"], &doc));
        let split = lebesgue_decompose(&pa, &pb, &pol).unwrap();
        assert!(matrix(&r["regular"]).approx_eq(split.regular.base(), pol.eq_tol));
        assert!(matrix(&r["singular"]).approx_eq(split.singular.base(), pol.eq_tol));

        let p = pa.range_projector();
        let bm = sample::matrix(n, n, &mut rng) * p.matrix();
        let doc = json!({ "a": hermitian_to_json(&a), "b": matrix_to_json(&bm) });
        let r = report(&run_stdin(&["complement", "-i", "-"], &doc));
        let s = IncompleteBlockSystem::new(pa.clone(), bm).unwrap();
        let ab = complement(&s, &pol).unwrap();
        assert!(matrix(&r["complement"]).approx_eq(ab.base(), pol.eq_tol));
    }
}

#[test]
fn reports_are_deterministic() {
    let doc = json!({ "a": [[2, 1], [1, 1]], "b": [[1, 0], [0, 0]] });
    let first = run_stdin(&["lebesgue", "-i", "-"], &doc);
    let second = run_stdin(&["lebesgue", "-i", "-"], &doc);
    assert_eq!(first.stdout, second.stdout);
    let first = run(&["verify", "--count", "5", "--seed", "7"]);
    let second = run(&["verify", "--count", "5", "--seed", "7"]);
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn verify_modes() {
    let r = report(&run(&["verify", "--count", "20", "--max-dim", "4"]));
    assert_eq!(r["mode"], "random");
    assert_eq!(r["passed"], true);
    assert_eq!(r["objectives"].as_array().unwrap().len(), 7);

    let doc = json!({ "a": [[2, 1], [1, 1]], "b": [[1, 0], [0, 0]] });
    let r = report(&run_stdin(&["verify", "-i", "-", "--count", "5"], &doc));
    assert_eq!(r["mode"], "supplied");
    assert_eq!(r["passed"], true);
}

#[test]
fn text_output() {
    let doc = json!({ "a": [[1, 0], [0, 1]], "b": [[1, 0], [0, 1]] });
    let out = run_stdin(&["parsum", "-i", "-", "--text"], &doc);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("parallelSum: 2x2 matrix"));
    assert!(text.contains("0.500000"));
    assert!(serde_json::from_str::<Value>(&text).is_err());
}
