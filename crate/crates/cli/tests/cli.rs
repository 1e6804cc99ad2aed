// SPDX-License-Identifier: Apache-2.0

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/tests/fixtures")
}

fn qtranspile(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qtranspile"))
        .args(args)
        .env_remove("QTRANSPILE_SEED")
        .output()
        .expect("binary runs")
}

fn fixture(name: &str) -> String {
    fixtures().join(name).to_string_lossy().into_owned()
}

#[test]
fn ghz_on_a_line_emits_ibm_statements_only() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("ghz.qasm");
    let o = qtranspile(&[
        "run",
        "-i",
        &fixture("ghz_n3.qasm"),
        "-d",
        "line:3",
        "-b",
        "ibmq",
        "-o",
        out.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = std::fs::read_to_string(&out).unwrap();
    let allowed = ["rz", "sx", "x", "cx", "measure", "barrier"];
    for line in text.lines().skip(4) {
        let op = line.split([' ', '(']).next().unwrap();
        assert!(allowed.contains(&op), "unexpected statement {line}");
    }
}

#[test]
fn missing_input_names_the_path() {
    let o = qtranspile(&[
        "run",
        "-i",
        "/no/such/file.qasm",
        "-d",
        "line:3",
        "-b",
        "ibmq",
        "-o",
        "/tmp/unused.qasm",
    ]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("/no/such/file.qasm"));
    assert_eq!(err.lines().count(), 1);
}

#[test]
fn failure_classes_have_distinct_codes() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.qasm");
    std::fs::write(&bad, "OPENQASM 2.0;\nqreg q[2];\ncx q[0];\n").unwrap();
    let out = dir.path().join("o.qasm");
    let out = out.to_str().unwrap();
    let parse = qtranspile(&[
        "run",
        "-i",
        bad.to_str().unwrap(),
        "-d",
        "line:3",
        "-b",
        "ibmq",
        "-o",
        out,
    ]);
    assert_eq!(parse.status.code(), Some(3));
    let device = qtranspile(&[
        "run",
        "-i",
        &fixture("ghz_n3.qasm"),
        "-d",
        "nowhere",
        "-b",
        "ibmq",
        "-o",
        out,
    ]);
    assert_eq!(device.status.code(), Some(4));
    let routing = qtranspile(&[
        "run",
        "-i",
        &fixture("ghz_n5.qasm"),
        "-d",
        "line:3",
        "-b",
        "ibmq",
        "-o",
        out,
    ]);
    assert_eq!(routing.status.code(), Some(5));
    let decompose = qtranspile(&[
        "run",
        "-i",
        &fixture("ghz_n3.qasm"),
        "-d",
        "line:3",
        "-b",
        "dwave",
        "-o",
        out,
    ]);
    assert_eq!(decompose.status.code(), Some(6));
}

#[test]
fn stats_time_and_verify() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("adder.qasm");
    let o = qtranspile(&[
        "run",
        "-i",
        &fixture("adder_n4.qasm"),
        "-d",
        "ibmq_toronto",
        "-b",
        "ibmq",
        "-o",
        out.to_str().unwrap(),
        "--stats",
        "--time",
        "--verify",
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let stats: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    for key in [
        "depth",
        "gate_density",
        "retention_lifespan",
        "measurement_density",
        "entanglement_variance",
    ] {
        assert!(stats.get(key).is_some(), "missing {key}");
    }
    let err = String::from_utf8_lossy(&o.stderr);
    for stage in ["parse", "configure", "route", "decompose", "emit", "verify: equivalent"] {
        assert!(err.contains(stage), "missing {stage} in {err}");
    }
}

#[test]
fn constrained_run_writes_layout_sidecar() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("qft.qasm");
    let o = qtranspile(&[
        "run",
        "-i",
        &fixture("qft_n4.qasm"),
        "-d",
        "ibmq_seattle",
        "-b",
        "quantinuum",
        "-o",
        out.to_str().unwrap(),
        "--constrained",
        "--qubit-priority",
        "3,0",
        "--verify",
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(std::fs::read_to_string(&out).unwrap().contains("qreg q[4];"));
    let sidecar = dir.path().join("qft.qasm.layout.json");
    let layout: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(sidecar).unwrap()).unwrap();
    let ids = layout["physical_ids"].as_array().unwrap();
    assert_eq!(ids.len(), 4);
    assert!(ids.iter().all(|v| v.as_u64().unwrap() < 433));
}

#[test]
fn bad_priority_and_radius_are_rejected() {
    let base = ["run", "-i", "x.qasm", "-d", "line:3", "-b", "ibmq", "-o", "y.qasm"];
    let dup = qtranspile(&[&base[..], &["--qubit-priority", "1,1"]].concat());
    assert!(!dup.status.success());
    let radius = qtranspile(&[&base[..], &["--prune-radius", "0"]].concat());
    assert!(!radius.status.success());
}

#[test]
fn runs_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let mut texts = Vec::new();
    for (i, seed) in ["0", "17"].iter().enumerate() {
        let out = dir.path().join(format!("{i}.qasm"));
        let o = Command::new(env!("CARGO_BIN_EXE_qtranspile"))
            .args([
                "run",
                "-i",
                &fixture("qaoa_n6.qasm"),
                "-d",
                "rigetti_aspen",
                "-b",
                "rigetti",
                "-o",
                out.to_str().unwrap(),
            ])
            .env("QTRANSPILE_SEED", seed)
            .output()
            .unwrap();
        assert!(o.status.success());
        texts.push(std::fs::read(&out).unwrap());
    }
    assert_eq!(texts[0], texts[1]);
}

#[test]
fn bench_writes_one_row_per_file() {
    let dir = tempfile::tempdir().unwrap();
    for name in ["ghz_n3.qasm", "adder_n4.qasm", "bv_n4.qasm"] {
        std::fs::copy(fixtures().join(name), dir.path().join(name)).unwrap();
    }
    std::fs::write(dir.path().join("broken.qasm"), "OPENQASM 2.0;\nqreg q[1];\nfoo q[0];\n").unwrap();
    let mut csvs = Vec::new();
    for run in 0..2 {
        let report = dir.path().join(format!("report{run}.csv"));
        let o = qtranspile(&[
            "bench",
            dir.path().to_str().unwrap(),
            "-d",
            "ibmq_toronto",
            "-b",
            "ibmq",
            "-o",
            report.to_str().unwrap(),
        ]);
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
        let text = std::fs::read_to_string(&report).unwrap();
        // Drop the time column before comparing runs.
        let stable: Vec<String> = text
            .lines()
            .map(|l| {
                let mut cols: Vec<&str> = l.split(',').collect();
                cols.remove(8);
                cols.join(",")
            })
            .collect();
        csvs.push(stable);
    }
    assert_eq!(csvs[0], csvs[1]);
    let rows = &csvs[0];
    assert_eq!(
        rows[0],
        "file,qubits,in_2q,in_total,in_depth,out_2q,out_total,out_depth,status"
    );
    assert_eq!(rows.len(), 5);
    let adder = rows.iter().find(|r| r.starts_with("adder_n4.qasm")).unwrap();
    assert!(adder.starts_with("adder_n4.qasm,4,10,23,11,"), "{adder}");
    assert!(rows.iter().any(|r| r.starts_with("broken.qasm") && !r.ends_with(",ok")));
}

#[test]
fn verify_subcommand_honours_permutations() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.qasm");
    let b = dir.path().join("b.qasm");
    std::fs::write(&a, "OPENQASM 2.0;\ninclude \"qelib1.inc\";\nqreg q[2];\nh q[0];\n").unwrap();
    std::fs::write(&b, "OPENQASM 2.0;\ninclude \"qelib1.inc\";\nqreg q[2];\nh q[1];\n").unwrap();
    let (a, b) = (a.to_str().unwrap(), b.to_str().unwrap());
    assert_eq!(qtranspile(&["verify", a, b]).status.code(), Some(7));
    let ok = qtranspile(&["verify", a, b, "--perm", "1,0"]);
    assert!(ok.status.success());
    assert_eq!(String::from_utf8_lossy(&ok.stdout).trim(), "equivalent");
    assert_eq!(qtranspile(&["verify", a, b, "--perm", "0,0"]).status.code(), Some(1));
}
