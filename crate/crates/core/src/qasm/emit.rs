// SPDX-License-Identifier: Apache-2.0

use std::collections::BTreeSet;
use std::fmt::Write;

use super::QasmError;
use crate::ir::{Circuit, GateKind};

/// Definitions for native gates outside qelib1, so emitted files stay
/// loadable by other OpenQASM 2.0 tools. Each body matches the native gate
/// up to global phase.
pub(super) fn definition(kind: GateKind) -> Option<&'static str> {
    Some(match kind {
        GateKind::GPI => "gate gpi(phi) a { u3(pi,phi,pi-phi) a; }",
        GateKind::GPI2 => "gate gpi2(phi) a { rz(-phi) a; rx(pi/2) a; rz(phi) a; }",
        GateKind::GZ => "gate gz(theta) a { rz(theta) a; }",
        GateKind::MS => {
            "gate ms(p0,p1) a,b { rz(-p0) a; rz(-p1) b; h a; h b; cx a,b; rz(pi/2) b; cx a,b; h a; h b; rz(p0) a; rz(p1) b; }"
        }
        GateKind::ZZ => "gate zz(theta) a,b { cx a,b; rz(theta) b; cx a,b; }",
        _ => return None,
    })
}

/// Renders a circuit as OpenQASM 2.0 over a single `q` register (and a
/// single `c` register when classical bits exist).
///
/// Angles use the shortest representation that parses back to the same
/// `f64`. Non-finite parameters cannot be expressed and are rejected.
pub fn emit_qasm(circuit: &Circuit) -> Result<String, QasmError> {
    let mut out = String::with_capacity(64 + circuit.len() * 24);
    out.push_str("OPENQASM 2.0;\ninclude \"qelib1.inc\";\n");
    let extra: BTreeSet<GateKind> = circuit
        .gates()
        .iter()
        .map(|g| g.kind())
        .filter(|k| !k.in_qelib1())
        .collect();
    for kind in extra {
        if let Some(def) = definition(kind) {
            out.push_str(def);
            out.push('\n');
        }
    }
    let _ = writeln!(out, "qreg q[{}];", circuit.num_qubits());
    let clbits = circuit.num_clbits().max(
        circuit
            .measure_map()
            .iter()
            .map(|&(_, c)| c as usize + 1)
            .max()
            .unwrap_or(0),
    );
    if clbits > 0 {
        let _ = writeln!(out, "creg c[{clbits}];");
    }
    for gate in circuit.gates() {
        match gate.kind() {
            GateKind::Measure => {
                let clbit = gate.clbit().expect("measure carries a clbit");
                let _ = writeln!(out, "measure q[{}] -> c[{clbit}];", gate.qubits()[0]);
                continue;
            }
            kind => out.push_str(kind.name()),
        }
        if !gate.params().is_empty() {
            out.push('(');
            for (i, p) in gate.params().iter().enumerate() {
                if !p.is_finite() {
                    return Err(QasmError::Emit(format!(
                        "gate `{}` has non-finite parameter {p}",
                        gate.kind()
                    )));
                }
                if i > 0 {
                    out.push(',');
                }
                let _ = write!(out, "{p}");
            }
            out.push(')');
        }
        for (i, q) in gate.qubits().iter().enumerate() {
            out.push_str(if i == 0 { " " } else { "," });
            let _ = write!(out, "q[{q}]");
        }
        out.push_str(";\n");
    }
    Ok(out)
}
