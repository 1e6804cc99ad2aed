// SPDX-License-Identifier: Apache-2.0

//! Standard-gate definitions of the qelib1 composition gates.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, FRAC_PI_8, PI};

use super::{Gate, GateKind, Qubit};

/// Returns the definition of a composition gate in terms of simpler library
/// gates, in circuit order. `None` for gates that are not composite, and for
/// `c4x`, which has no supported definition.
pub fn expansion(gate: &Gate) -> Option<Vec<Gate>> {
    let q = gate.qubits();
    let p = gate.params();
    let mut out = Vec::new();
    let mut e = |kind: GateKind, qubits: &[Qubit], params: &[f64]| {
        out.push(Gate::raw(kind, qubits, params));
    };
    use GateKind::*;
    match gate.kind() {
        CZ => {
            let (a, b) = (q[0], q[1]);
            e(H, &[b], &[]);
            e(CX, &[a, b], &[]);
            e(H, &[b], &[]);
        }
        CY => {
            let (a, b) = (q[0], q[1]);
            e(Sdg, &[b], &[]);
            e(CX, &[a, b], &[]);
            e(S, &[b], &[]);
        }
        Swap => {
            let (a, b) = (q[0], q[1]);
            e(CX, &[a, b], &[]);
            e(CX, &[b, a], &[]);
            e(CX, &[a, b], &[]);
        }
        CH => {
            let (a, b) = (q[0], q[1]);
            e(S, &[b], &[]);
            e(H, &[b], &[]);
            e(T, &[b], &[]);
            e(CX, &[a, b], &[]);
            e(Tdg, &[b], &[]);
            e(H, &[b], &[]);
            e(Sdg, &[b], &[]);
        }
        CRX => {
            let (a, b, l) = (q[0], q[1], p[0]);
            e(U1, &[b], &[FRAC_PI_2]);
            e(CX, &[a, b], &[]);
            e(U3, &[b], &[-l / 2.0, 0.0, 0.0]);
            e(CX, &[a, b], &[]);
            e(U3, &[b], &[l / 2.0, -FRAC_PI_2, 0.0]);
        }
        CRY => {
            let (a, b, l) = (q[0], q[1], p[0]);
            e(RY, &[b], &[l / 2.0]);
            e(CX, &[a, b], &[]);
            e(RY, &[b], &[-l / 2.0]);
            e(CX, &[a, b], &[]);
        }
        CRZ => {
            let (a, b, l) = (q[0], q[1], p[0]);
            e(RZ, &[b], &[l / 2.0]);
            e(CX, &[a, b], &[]);
            e(RZ, &[b], &[-l / 2.0]);
            e(CX, &[a, b], &[]);
        }
        CU1 => {
            let (a, b, l) = (q[0], q[1], p[0]);
            e(U1, &[a], &[l / 2.0]);
            e(CX, &[a, b], &[]);
            e(U1, &[b], &[-l / 2.0]);
            e(CX, &[a, b], &[]);
            e(U1, &[b], &[l / 2.0]);
        }
        CU3 => {
            let (a, b) = (q[0], q[1]);
            let (theta, phi, lambda) = (p[0], p[1], p[2]);
            e(U1, &[a], &[(lambda + phi) / 2.0]);
            e(U1, &[b], &[(lambda - phi) / 2.0]);
            e(CX, &[a, b], &[]);
            e(U3, &[b], &[-theta / 2.0, 0.0, -(phi + lambda) / 2.0]);
            e(CX, &[a, b], &[]);
            e(U3, &[b], &[theta / 2.0, phi, 0.0]);
        }
        RXX => {
            let (a, b, t) = (q[0], q[1], p[0]);
            e(H, &[a], &[]);
            e(H, &[b], &[]);
            e(CX, &[a, b], &[]);
            e(RZ, &[b], &[t]);
            e(CX, &[a, b], &[]);
            e(H, &[a], &[]);
            e(H, &[b], &[]);
        }
        RZZ => {
            let (a, b, t) = (q[0], q[1], p[0]);
            e(CX, &[a, b], &[]);
            e(RZ, &[b], &[t]);
            e(CX, &[a, b], &[]);
        }
        CCX => {
            let (a, b, c) = (q[0], q[1], q[2]);
            e(H, &[c], &[]);
            e(CX, &[b, c], &[]);
            e(Tdg, &[c], &[]);
            e(CX, &[a, c], &[]);
            e(T, &[c], &[]);
            e(CX, &[b, c], &[]);
            e(Tdg, &[c], &[]);
            e(CX, &[a, c], &[]);
            e(T, &[b], &[]);
            e(T, &[c], &[]);
            e(H, &[c], &[]);
            e(CX, &[a, b], &[]);
            e(T, &[a], &[]);
            e(Tdg, &[b], &[]);
            e(CX, &[a, b], &[]);
        }
        CSwap => {
            let (a, b, c) = (q[0], q[1], q[2]);
            e(CX, &[c, b], &[]);
            e(CCX, &[a, b, c], &[]);
            e(CX, &[c, b], &[]);
        }
        RCCX => {
            let (a, b, c) = (q[0], q[1], q[2]);
            e(U2, &[c], &[0.0, PI]);
            e(U1, &[c], &[FRAC_PI_4]);
            e(CX, &[b, c], &[]);
            e(U1, &[c], &[-FRAC_PI_4]);
            e(CX, &[a, c], &[]);
            e(U1, &[c], &[FRAC_PI_4]);
            e(CX, &[b, c], &[]);
            e(U1, &[c], &[-FRAC_PI_4]);
            e(U2, &[c], &[0.0, PI]);
        }
        RC3X => {
            let (a, b, c, d) = (q[0], q[1], q[2], q[3]);
            e(U2, &[d], &[0.0, PI]);
            e(U1, &[d], &[FRAC_PI_4]);
            e(CX, &[c, d], &[]);
            e(U1, &[d], &[-FRAC_PI_4]);
            e(U2, &[d], &[0.0, PI]);
            e(CX, &[a, d], &[]);
            e(U1, &[d], &[FRAC_PI_4]);
            e(CX, &[b, d], &[]);
            e(U1, &[d], &[-FRAC_PI_4]);
            e(CX, &[a, d], &[]);
            e(U1, &[d], &[FRAC_PI_4]);
            e(CX, &[b, d], &[]);
            e(U1, &[d], &[-FRAC_PI_4]);
            e(U2, &[d], &[0.0, PI]);
            e(U1, &[d], &[FRAC_PI_4]);
            e(CX, &[c, d], &[]);
            e(U1, &[d], &[-FRAC_PI_4]);
            e(U2, &[d], &[0.0, PI]);
        }
        C3X => gray_code_c3(q, FRAC_PI_4, &mut e),
        C3SqrtX => gray_code_c3(q, FRAC_PI_8, &mut e),
        _ => return None,
    }
    Some(out)
}

/// Three-control gray-code construction: conjugating the target by H turns
/// each `cu1(±angle)` into a phase in the X basis; the seven parity terms sum
/// to `4 * angle` only when every control is set.
fn gray_code_c3(q: &[Qubit], angle: f64, e: &mut impl FnMut(GateKind, &[Qubit], &[f64])) {
    use GateKind::*;
    let (a, b, c, d) = (q[0], q[1], q[2], q[3]);
    let phase = |ctrl: Qubit, sign: f64, e: &mut dyn FnMut(GateKind, &[Qubit], &[f64])| {
        e(H, &[d], &[]);
        e(CU1, &[ctrl, d], &[sign * angle]);
        e(H, &[d], &[]);
    };
    phase(a, 1.0, e);
    e(CX, &[a, b], &[]);
    phase(b, -1.0, e);
    e(CX, &[a, b], &[]);
    phase(b, 1.0, e);
    e(CX, &[b, c], &[]);
    phase(c, -1.0, e);
    e(CX, &[a, c], &[]);
    phase(c, 1.0, e);
    e(CX, &[b, c], &[]);
    phase(c, -1.0, e);
    e(CX, &[a, c], &[]);
    phase(c, 1.0, e);
}
