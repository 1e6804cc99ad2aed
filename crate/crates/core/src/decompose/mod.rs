// SPDX-License-Identifier: Apache-2.0

//! Gate decomposition passes.
//!
//! [`decompose_3q`] runs before routing and leaves only one- and two-qubit
//! gates. [`decompose_to_basis`] runs after routing and rewrites every gate
//! into the native set of a named backend. One-qubit gates go through their
//! ZYZ angles, two-qubit gates through CX unless the backend has a direct
//! rule.

mod backend;
mod euler;
mod fold;

use std::f64::consts::FRAC_PI_2;

use thiserror::Error;

use crate::ir::{expansion, gate_unitary, Circuit, Gate, GateKind};

pub use backend::{registry, BackendRegistry, BasisBackend, Ibmq, IonQ, Quantinuum, Rigetti};
pub use euler::{normalize_angle, zyz, Euler};
pub use fold::fold_1q_runs;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DecomposeError {
    #[error("unsupported gate `{0}`")]
    UnsupportedGate(String),
    #[error("unknown backend `{0}` (expected one of: {1})")]
    UnknownBackend(String, String),
    #[error("gate `{0}` acts on more than two qubits; run the three-qubit pass first")]
    NotTwoLocal(String),
}

/// Expands every gate on three or more qubits into one- and two-qubit
/// library gates. Barriers are kept as they are.
pub fn decompose_3q(c: &Circuit) -> Result<Circuit, DecomposeError> {
    let mut out = c.empty_like();
    for gate in c.gates() {
        expand_wide(gate, &mut out)?;
    }
    Ok(out)
}

fn expand_wide(gate: &Gate, out: &mut Circuit) -> Result<(), DecomposeError> {
    if gate.num_qubits() < 3 || gate.kind().is_directive() {
        out.push(gate.clone());
        return Ok(());
    }
    let body = expansion(gate).ok_or_else(|| DecomposeError::UnsupportedGate(gate.kind().name().to_owned()))?;
    for g in &body {
        expand_wide(g, out)?;
    }
    Ok(())
}

/// Looks up a backend in the standard registry.
pub fn backend(name: &str) -> Result<&'static dyn BasisBackend, DecomposeError> {
    let reg = registry();
    reg.get(name)
        .ok_or_else(|| DecomposeError::UnknownBackend(name.to_owned(), reg.names().join(", ")))
}

/// Rewrites `c` into the native gates of the backend called `name`.
pub fn decompose_to_basis(c: &Circuit, name: &str) -> Result<Circuit, DecomposeError> {
    lower_circuit(c, backend(name)?)
}

/// Rewrites `c` into the native gates of `b`. Measurements and barriers
/// pass through; native gates pass through with angles mapped into
/// `(-pi, pi]`.
pub fn lower_circuit(c: &Circuit, b: &dyn BasisBackend) -> Result<Circuit, DecomposeError> {
    let mut out = c.empty_like();
    let mut scratch = Vec::new();
    for gate in c.gates() {
        lower(gate, b, &mut out, &mut scratch)?;
    }
    Ok(out)
}

fn lower(gate: &Gate, b: &dyn BasisBackend, out: &mut Circuit, scratch: &mut Vec<Gate>) -> Result<(), DecomposeError> {
    let kind = gate.kind();
    if kind.is_directive() {
        out.push(gate.clone());
        return Ok(());
    }
    if b.basis().contains(&kind) {
        if gate.params().is_empty() {
            out.push(gate.clone());
        } else {
            let p: Vec<f64> = gate.params().iter().map(|&a| normalize_angle(a)).collect();
            out.push(gate.with_params(&p));
        }
        return Ok(());
    }
    let body = match gate.num_qubits() {
        1 => {
            let m = gate_unitary(gate).map_err(|_| DecomposeError::UnsupportedGate(kind.name().to_owned()))?;
            scratch.clear();
            b.lower_1q(gate.qubits()[0], zyz(&m), scratch);
            for g in scratch.drain(..) {
                out.push(g);
            }
            return Ok(());
        }
        2 => b
            .lower_2q(gate)
            .or_else(|| native_2q_definition(gate))
            .or_else(|| expansion(gate))
            .ok_or_else(|| DecomposeError::UnsupportedGate(kind.name().to_owned()))?,
        _ => return Err(DecomposeError::NotTwoLocal(kind.name().to_owned())),
    };
    for g in &body {
        lower(g, b, out, scratch)?;
    }
    Ok(())
}

/// Library-gate forms of the backend-native two-qubit gates, for lowering
/// them onto a different backend.
fn native_2q_definition(gate: &Gate) -> Option<Vec<Gate>> {
    let q = gate.qubits();
    let p = gate.params();
    match gate.kind() {
        GateKind::ZZ => Some(vec![Gate::raw(GateKind::RZZ, q, p)]),
        GateKind::MS => Some(vec![
            Gate::raw(GateKind::RZ, &[q[0]], &[-p[0]]),
            Gate::raw(GateKind::RZ, &[q[1]], &[-p[1]]),
            Gate::raw(GateKind::RXX, q, &[FRAC_PI_2]),
            Gate::raw(GateKind::RZ, &[q[0]], &[p[0]]),
            Gate::raw(GateKind::RZ, &[q[1]], &[p[1]]),
        ]),
        _ => None,
    }
}
