// SPDX-License-Identifier: Apache-2.0

//! OpenQASM 2.0 reader and writer.
//!
//! The qelib1 library is built in: `include "qelib1.inc";` is accepted and
//! needs no file on disk. User `gate` blocks are inlined at their call
//! sites, registers are flattened in declaration order, and angle
//! expressions are folded to `f64` at parse time. Classical control
//! (`if`) and `reset` are rejected.

mod emit;
mod expr;
mod lexer;
mod parser;

use thiserror::Error;

pub use emit::emit_qasm;
pub use lexer::{tokenize, Lexer, Token, TokenKind};
pub use parser::{parse, RegisterEntry, RegisterTable};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RegisterError {
    #[error("unknown register `{0}`")]
    Unknown(String),
    #[error("register `{0}` declared twice")]
    Duplicate(String),
    #[error("index out of range: {name}[{index}] (width {width})")]
    IndexOutOfRange { name: String, index: usize, width: usize },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QasmError {
    #[error("{line}:{col}: {message}")]
    Lex { line: u32, col: u32, message: String },
    #[error("{line}:{col}: {message}")]
    Syntax { line: u32, col: u32, message: String },
    #[error("{line}:{col}: unknown gate `{name}`")]
    UnknownGate { name: String, line: u32, col: u32 },
    #[error("{line}:{col}: wrong arity: {message}")]
    Arity { line: u32, col: u32, message: String },
    #[error("{line}:{col}: unsupported construct: {construct}")]
    Unsupported { construct: String, line: u32, col: u32 },
    #[error("{line}:{col}: {source}")]
    Register { line: u32, col: u32, source: RegisterError },
    #[error("cannot emit circuit: {0}")]
    Emit(String),
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ir::{gate_unitary, Gate, GateKind};
    use std::f64::consts::PI;

    const GHZ: &str =
        "OPENQASM 2.0;\ninclude \"qelib1.inc\";\nqreg q[3];\ncreg c[3];\nh q[0];\ncx q[0],q[1];\ncx q[1],q[2];\n";

    #[test]
    fn flatten_uses_prefix_sums() {
        let mut t = RegisterTable::new();
        t.add("a", 2).unwrap();
        t.add("b", 2).unwrap();
        assert_eq!(t.flatten("b", 1), Ok(3));
        assert_eq!(t.flatten("a", 0), Ok(0));
        let err = t.flatten("b", 2).unwrap_err();
        assert!(err.to_string().starts_with("index out of range"));
        assert_eq!(t.flatten("z", 0), Err(RegisterError::Unknown("z".into())));
    }

    #[test]
    fn flatten_is_a_bijection() {
        let mut t = RegisterTable::new();
        for (name, w) in [("a", 3), ("b", 1), ("c", 4)] {
            t.add(name, w).unwrap();
        }
        let mut seen: Vec<usize> = t
            .entries()
            .iter()
            .flat_map(|e| (0..e.width).map(|i| t.flatten(&e.name, i).unwrap()).collect::<Vec<_>>())
            .collect();
        seen.sort_unstable();
        assert_eq!(seen, (0..8).collect::<Vec<_>>());
    }

    #[test]
    fn parses_ghz() {
        let c = parse(GHZ).unwrap();
        assert_eq!(c.num_qubits(), 3);
        assert_eq!(c.len(), 3);
        assert_eq!(c.gates()[1].qubits(), &[0, 1]);
    }

    #[test]
    fn folds_angle_expressions() {
        let c = parse("OPENQASM 2.0;\nqreg q[1];\nu3(pi/2,0,pi) q[0];\nrz(-2*pi/4 + 1) q[0];").unwrap();
        let g = &c.gates()[0];
        assert_eq!(g.kind(), GateKind::U3);
        assert_eq!(g.params(), &[PI / 2.0, 0.0, PI]);
        assert_eq!(c.gates()[1].params(), &[-2.0 * PI / 4.0 + 1.0]);
    }

    #[test]
    fn multiple_registers_flatten_in_order() {
        let c = parse("OPENQASM 2.0;\nqreg a[2];\nqreg b[2];\ncreg m[2];\ncx a[1],b[1];\nmeasure b -> m;").unwrap();
        assert_eq!(c.num_qubits(), 4);
        assert_eq!(c.gates()[0].qubits(), &[1, 3]);
        assert_eq!(c.measure_map(), vec![(2, 0), (3, 1)]);
    }

    #[test]
    fn broadcast_over_registers() {
        let c = parse("OPENQASM 2.0;\nqreg a[3];\nqreg b[3];\nh a;\ncx a,b;\ncx a[0],b;").unwrap();
        assert_eq!(c.len(), 9);
        assert_eq!(c.gates()[4].qubits(), &[1, 4]);
        assert_eq!(c.gates()[8].qubits(), &[0, 5]);
    }

    #[test]
    fn user_gates_are_inlined() {
        let src = "OPENQASM 2.0;\nqreg q[3];\n\
            gate maj a,b,c { cx c,b; cx c,a; ccx a,b,c; }\n\
            gate rot(t) a { rz(t/2) a; rz(-t) a; }\n\
            maj q[0],q[1],q[2];\nrot(pi) q[1];";
        let c = parse(src).unwrap();
        let kinds: Vec<_> = c.gates().iter().map(|g| g.kind()).collect();
        assert_eq!(
            kinds,
            vec![GateKind::CX, GateKind::CX, GateKind::CCX, GateKind::RZ, GateKind::RZ]
        );
        assert_eq!(c.gates()[0].qubits(), &[2, 1]);
        assert_eq!(c.gates()[3].params(), &[PI / 2.0]);
        assert_eq!(c.gates()[4].params(), &[-PI]);
    }

    #[test]
    fn barrier_is_preserved() {
        let c = parse("OPENQASM 2.0;\nqreg q[3];\nbarrier q;\nbarrier q[0],q[2];").unwrap();
        assert_eq!(c.gates()[0].kind(), GateKind::Barrier);
        assert_eq!(c.gates()[0].qubits(), &[0, 1, 2]);
        assert_eq!(c.gates()[1].qubits(), &[0, 2]);
    }

    #[test]
    fn rejects_unsupported_and_malformed_input() {
        let cases = [
            ("OPENQASM 2.0;\nqreg q[1];\ncreg c[1];\nif(c==1) x q[0];", "unsupported"),
            ("OPENQASM 2.0;\nqreg q[1];\nreset q[0];", "unsupported"),
            ("OPENQASM 2.0;\nqreg q[1];\nfoo q[0];", "unknown gate"),
            ("OPENQASM 2.0;\nqreg q[2];\ncx q[0];", "wrong arity"),
            ("OPENQASM 2.0;\nqreg q[2];\nrz q[0];", "wrong arity"),
            ("OPENQASM 2.0;\nqreg q[2];\nh q[2];", "index out of range"),
            ("OPENQASM 2.0;\nqreg q[2];\nh q[0]", "end of input"),
            ("qreg q[2];", "OPENQASM"),
            ("OPENQASM 2.0;\nqreg q[2];\nopaque magic a;\nmagic q[0];", "opaque"),
            ("OPENQASM 2.0;\ncreg c[2];", "no qreg"),
        ];
        for (src, needle) in cases {
            let err = parse(src).unwrap_err().to_string();
            assert!(err.contains(needle), "{src:?} -> {err}");
        }
    }

    #[test]
    fn syntax_errors_carry_positions() {
        let err = parse("OPENQASM 2.0;\nqreg q[2];\ncx q[0] q[1];").unwrap_err();
        assert!(matches!(err, QasmError::Syntax { line: 3, col: 9, .. }), "{err:?}");
    }

    #[test]
    fn emit_contains_measurements_and_round_trips() {
        let mut src = GHZ.to_owned();
        src.push_str("measure q[0] -> c[0];\n");
        let c = parse(&src).unwrap();
        let text = emit_qasm(&c).unwrap();
        assert!(text.contains("measure q[0] -> c[0];"), "{text}");
        assert_eq!(parse(&text).unwrap(), c);
    }

    #[test]
    fn emit_rejects_non_finite_angles() {
        let mut c = crate::ir::Circuit::new(1, 0);
        c.append(Gate::new(GateKind::RZ, &[0], &[f64::NAN]).unwrap()).unwrap();
        assert!(matches!(emit_qasm(&c), Err(QasmError::Emit(_))));
    }

    #[test]
    fn native_gate_definitions_match_their_matrices() {
        // Parse each emitted definition under a fresh name and compare unitaries.
        let cases: [(GateKind, &[f64]); 5] = [
            (GateKind::GPI, &[0.7]),
            (GateKind::GPI2, &[-1.1]),
            (GateKind::GZ, &[0.4]),
            (GateKind::MS, &[0.3, -0.8]),
            (GateKind::ZZ, &[1.3]),
        ];
        for (kind, params) in cases {
            let def = emit::definition(kind).unwrap();
            let renamed = def.replacen(&format!("gate {} ", kind.name()), "gate probe", 1);
            let renamed = renamed.replacen(&format!("gate {}(", kind.name()), "gate probe(", 1);
            let args = if kind.num_qubits() == Some(2) {
                "q[0],q[1]"
            } else {
                "q[0]"
            };
            let plist: Vec<String> = params.iter().map(|p| p.to_string()).collect();
            let src = format!(
                "OPENQASM 2.0;\nqreg q[2];\n{renamed}\nprobe({}) {args};",
                plist.join(",")
            );
            let c = parse(&src).unwrap();
            let probe = crate::oracle::circuit_unitary(&c).unwrap();
            let qubits: Vec<u32> = if kind.num_qubits() == Some(2) {
                vec![0, 1]
            } else {
                vec![0]
            };
            let mut direct = crate::ir::Circuit::new(2, 0);
            direct.append(Gate::new(kind, &qubits, params).unwrap()).unwrap();
            let native = crate::oracle::circuit_unitary(&direct).unwrap();
            assert!(
                crate::oracle::equivalent_up_to_phase_and_perm(&probe, &native, &[0, 1], 1e-9),
                "{kind}"
            );
            let _ = gate_unitary;
        }
    }
}
