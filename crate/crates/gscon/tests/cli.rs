use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

use gscon::json::{to_pretty, WitnessOpJson};
use gscon_core::qcore::linalg;
use gscon_core::LocalOperator;
use serde_json::Value;

fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

fn toy(name: &str) -> PathBuf {
    let dir = fixtures().join("toy");
    fs::read_dir(&dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .find(|p| p.file_name().unwrap().to_string_lossy().contains(name))
        .unwrap_or_else(|| panic!("no fixture {name}"))
}

fn gscon(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_gscon")).args(args).output().unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn write_witness(path: &Path, ops: &[LocalOperator]) {
    let w: Vec<WitnessOpJson> = ops.iter().map(WitnessOpJson::from_operator).collect();
    fs::write(path, to_pretty(&w).unwrap()).unwrap();
}

#[test]
fn staircase_single_delta() {
    let (code, out, _) = gscon(&["staircase", "--delta", "0.1"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    let row = &v["rows"][0];
    assert!(row["maxOverlap"].as_f64().unwrap() <= 0.1 + 1e-10);
    assert_eq!(v["sequence"].as_array().unwrap().len(), row["m"].as_u64().unwrap() as usize);
}

#[test]
fn staircase_sweep_csv_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    assert_eq!(gscon(&["staircase", "--format", "csv", "--out", s(&a)]).0, 0);
    assert_eq!(gscon(&["staircase", "--format", "csv", "--out", s(&b)]).0, 0);
    let text = fs::read_to_string(&a).unwrap();
    assert_eq!(text, fs::read_to_string(&b).unwrap());
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "delta,m,max_overlap,final_distance");
    assert_eq!(lines.len(), 5);
}

#[test]
fn reduce_then_verify() {
    let dir = tempfile::tempdir().unwrap();
    let inst = dir.path().join("inst.json");
    let wit = dir.path().join("wit.json");
    let cnf = fixtures().join("cnf/single_clause.cnf");
    let (code, _, err) = gscon(&[
        "reduce-stconn", "--cnf", s(&cnf), "--x", "100", "--y", "001", "--emit-witness", s(&wit), "--out", s(&inst),
    ]);
    assert_eq!(code, 0, "{err}");
    let v: Value = serde_json::from_str(&fs::read_to_string(&inst).unwrap()).unwrap();
    assert_eq!(v["eta2"], "0.0009765625");
    assert_eq!(v["delta"], "0.0009765625");
    let (code, out, _) = gscon(&["verify", "--instance", s(&inst), "--witness", s(&wit)]);
    assert_eq!(code, 0);
    let r: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(r["verdict"], "yes");
}

#[test]
fn disconnected_formula_exits_two_without_witness() {
    let dir = tempfile::tempdir().unwrap();
    let wit = dir.path().join("wit.json");
    let cnf = fixtures().join("cnf/disconnected.cnf");
    let (code, out, _) = gscon(&["reduce-stconn", "--cnf", s(&cnf), "--x", "10", "--y", "01", "--emit-witness", s(&wit)]);
    assert_eq!(code, 2);
    assert!(!wit.exists());
    assert!(serde_json::from_str::<Value>(&out).is_ok());
}

#[test]
fn malformed_inputs_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let cnf = dir.path().join("bad.cnf");
    fs::write(&cnf, "p cnf 3 1\n1 2 0\n").unwrap();
    let (code, _, err) = gscon(&["reduce-stconn", "--cnf", s(&cnf), "--x", "100", "--y", "001"]);
    assert_eq!(code, 1);
    assert!(err.contains("error"));
    let inst = dir.path().join("trunc.json");
    let text = fs::read_to_string(toy("one_qubit_flip")).unwrap();
    fs::write(&inst, &text[..text.len() / 2]).unwrap();
    let (code, _, _) = gscon(&["verify", "--instance", s(&inst), "--witness", s(&inst)]);
    assert_eq!(code, 1);
    assert_eq!(gscon(&["staircase", "--delta", "0.7"]).0, 1);
    assert_eq!(gscon(&["no-such-command"]).0, 1);
}

#[test]
fn verify_verdict_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let wit = dir.path().join("w.json");
    let x = linalg::from_real_rows(2, &[0.0, 1.0, 1.0, 0.0]).unwrap();
    write_witness(&wit, &[LocalOperator::new(vec![0], x.clone()).unwrap()]);
    assert_eq!(gscon(&["verify", "--instance", s(&toy("one_qubit_flip")), "--witness", s(&wit)]).0, 0);

    write_witness(
        &wit,
        &[LocalOperator::new(vec![0], x.clone()).unwrap(), LocalOperator::new(vec![1], x).unwrap()],
    );
    assert_eq!(gscon(&["verify", "--instance", s(&toy("two_qubit_blocked_m2")), "--witness", s(&wit)]).0, 2);

    let t = 0.1f64.asin();
    let r = linalg::from_real_rows(2, &[t.cos(), -t.sin(), t.sin(), t.cos()]).unwrap();
    write_witness(&wit, &[LocalOperator::new(vec![1], r).unwrap()]);
    let (code, out, _) = gscon(&["verify", "--instance", s(&toy("two_qubit_identity")), "--witness", s(&wit)]);
    assert_eq!(code, 3, "{out}");
}

#[test]
fn deciders_follow_fixture_expectations() {
    for (name, code) in [("two_qubit_detour", 0), ("two_qubit_blocked_m2", 2)] {
        assert_eq!(gscon(&["pspace-search", "--instance", s(&toy(name))]).0, code, "{name}");
        assert_eq!(gscon(&["brute-force", "--instance", s(&toy(name))]).0, code, "{name}");
    }
}

#[test]
fn qcma_sim_rejects_the_no_fixture() {
    let dir = tempfile::tempdir().unwrap();
    let wit = dir.path().join("w.json");
    let proof = dir.path().join("p.json");
    let cnot = linalg::from_real_rows(
        4,
        &[1.0, 0.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 1.0, 0.0],
    )
    .unwrap();
    let x = linalg::from_real_rows(2, &[0.0, 1.0, 1.0, 0.0]).unwrap();
    write_witness(
        &wit,
        &[
            LocalOperator::new(vec![0, 1], linalg::kron(&x, &x)).unwrap(),
            LocalOperator::new(vec![1, 2], cnot).unwrap(),
        ],
    );
    let inst = fixtures().join("qcma_no.json");
    let (code, out, err) = gscon(&["qcma-sim", "--instance", s(&inst), "--witness", s(&wit), "--emit-proof", s(&proof)]);
    assert_eq!(code, 2, "{out}{err}");
    let (again, out2, _) = gscon(&["qcma-sim", "--instance", s(&inst), "--witness", s(&proof)]);
    assert_eq!((again, out2), (code, out));
}

#[test]
fn korth_and_net_test() {
    assert_eq!(gscon(&["korth", "--v", "000", "--w", "111", "--k", "2"]).0, 0);
    assert_eq!(gscon(&["korth", "--v", "000", "--w", "111", "--k", "3"]).0, 2);
    let a = gscon(&["net-test", "--eps", "0.1", "--samples", "200", "--seed", "7"]);
    let b = gscon(&["net-test", "--eps", "0.1", "--samples", "200", "--seed", "7"]);
    assert_eq!(a.0, 0);
    assert_eq!(a, b);
    assert_eq!(gscon(&["net-test", "--eps", "0.1", "--samples", "50", "--dim", "4"]).0, 0);
}
