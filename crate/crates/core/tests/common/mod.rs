// SPDX-License-Identifier: Apache-2.0

#![allow(dead_code)]

use std::path::PathBuf;

use qtranspile_core::device::{builtin_device, DeviceModel};
use qtranspile_core::{Circuit, Gate, GateKind, Qubit};
use rand::seq::SliceRandom;
use rand::Rng;

pub const BACKENDS: [(&str, &str); 4] = [
    ("ibmq", "ibmq_toronto"),
    ("rigetti", "rigetti_aspen"),
    ("ionq", "ionq_aria"),
    ("quantinuum", "quantinuum_h1"),
];

pub fn fixture_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures")
}

/// `(file stem, source)` for every fixture, sorted by name.
pub fn fixtures() -> Vec<(String, String)> {
    let mut out: Vec<(String, String)> = std::fs::read_dir(fixture_dir())
        .expect("fixture dir")
        .map(|e| e.expect("dir entry").path())
        .filter(|p| p.extension().is_some_and(|x| x == "qasm"))
        .map(|p| {
            let name = p.file_stem().unwrap().to_string_lossy().into_owned();
            (name, std::fs::read_to_string(&p).expect("readable fixture"))
        })
        .collect();
    out.sort();
    out
}

pub fn device(name: &str) -> DeviceModel {
    builtin_device(name).unwrap_or_else(|| panic!("unknown device {name}"))
}

/// Unitary library gates on at most `max_arity` qubits.
pub fn gate_pool(max_arity: usize) -> Vec<GateKind> {
    GateKind::ALL
        .iter()
        .copied()
        .filter(|k| !k.is_directive() && k.num_qubits().is_some_and(|a| a <= max_arity))
        .collect()
}

/// Random circuit over `n` qubits drawn from `pool`; gates wider than `n`
/// are skipped.
pub fn random_circuit(rng: &mut impl Rng, n: usize, len: usize, pool: &[GateKind]) -> Circuit {
    let mut c = Circuit::new(n, 0);
    let mut qubits: Vec<Qubit> = (0..n as Qubit).collect();
    while c.len() < len {
        let kind = *pool.choose(rng).unwrap();
        let arity = kind.num_qubits().unwrap();
        if arity > n {
            continue;
        }
        qubits.shuffle(rng);
        let params: Vec<f64> = (0..kind.num_params()).map(|_| rng.gen_range(-3.2..3.2)).collect();
        c.append(Gate::new(kind, &qubits[..arity], &params).unwrap()).unwrap();
    }
    c
}
