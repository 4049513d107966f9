use std::process::{Command, Output};

fn ghzkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ghzkit")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn tables_for_one_family_as_json() {
    let o = ghzkit(&["tables", "--family", "B_N", "--n", "3", "--format", "json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["suite"], "tables");
    assert_eq!(v["summary"]["total"], 6);
    assert_eq!(v["summary"]["failed"], 0);
    let z3 = v["checks"].as_array().unwrap().iter().find(|c| c["id"] == "conjugation/B_N/n=3/Z3").unwrap();
    assert_eq!(z3["status"], "pass");
    assert_eq!(z3["actual"], "-X1X2X3");
}

#[test]
fn classify_controlled_hadamard_t() {
    let o = ghzkit(&["classify", "C_HT"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("non-Clifford, non-parity-preserving"), "{out}");
    assert!(out.contains("E = diag(1, 1, w, w)"), "{out}");
}

#[test]
fn teleport_cnot_through_r() {
    let o = ghzkit(&["teleport", "--bell", "R", "--cu", "CNOT", "--failures-only"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("teleport: 265 checks, 265 passed, 0 failed"));
}

#[test]
fn sampling_requires_a_seed_and_is_reproducible() {
    assert!(!ghzkit(&["teleport", "--bell", "B", "--simulate", "10"]).status.success());
    let args = ["teleport", "--bell", "B", "--simulate", "500", "--seed", "7", "--kl", "10", "--format", "json"];
    let (a, b) = (ghzkit(&args), ghzkit(&args));
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let o = ghzkit(&["entangle", "B", "--oracle", "2000", "--seed", "3"]);
    assert!(o.status.success());
    assert_eq!(o.stdout, ghzkit(&["entangle", "B", "--oracle", "2000", "--seed", "3"]).stdout);
}

#[test]
fn matrix_files_are_accepted() {
    let path = std::env::temp_dir().join(format!("ghzkit-cli-test-{}.json", std::process::id()));
    let cnot = r#"{"qubits": 2, "entries": [[1,0,0,0,0],[0,0,0,0,0],[0,0,0,0,0],[0,0,0,0,0],
        [0,0,0,0,0],[1,0,0,0,0],[0,0,0,0,0],[0,0,0,0,0],
        [0,0,0,0,0],[0,0,0,0,0],[0,0,0,0,0],[1,0,0,0,0],
        [0,0,0,0,0],[0,0,0,0,0],[1,0,0,0,0],[0,0,0,0,0]]}"#;
    std::fs::write(&path, cnot).unwrap();
    let p = path.to_str().unwrap();
    let o = ghzkit(&["entangle", p]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("(π/4, 0, 0)"));
    let o = ghzkit(&["classify", p]);
    assert!(stdout(&o).contains("not a transform"));
    std::fs::remove_file(&path).unwrap();
}

#[test]
fn identities_suite_and_single_identity() {
    let o = ghzkit(&["identities", "--name", "q-exponential"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("phase found w^3"));
    assert!(ghzkit(&["identities", "--failures-only"]).status.success());
    let o = ghzkit(&["identities", "--name", "missing"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn unknown_gate_lists_vocabulary() {
    let o = ghzkit(&["ybe", "NOT_A_GATE"]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("known gates:") && err.contains("BPRIME"), "{err}");
}

#[test]
fn yang_baxter_expectations() {
    assert!(stdout(&ghzkit(&["ybe", "B"])).contains("PASS ybe/B: holds"));
    assert!(stdout(&ghzkit(&["ybe", "CNOT"])).contains("PASS ybe/CNOT: fails"));
}
