// SPDX-License-Identifier: Apache-2.0

//! Parametric benchmark circuits.

use std::f64::consts::PI;

use crate::ir::{Circuit, Gate, GateKind, Qubit};

fn push(c: &mut Circuit, kind: GateKind, qubits: &[Qubit], params: &[f64]) {
    c.push(Gate::raw(kind, qubits, params));
}

/// QFT without the final reversal, with every controlled phase written
/// as `u1; cx; u1; cx; u1`: `n + 5n(n-1)/2` gates, `n(n-1)` of them CX.
pub fn qft(n: usize) -> Circuit {
    let mut c = Circuit::with_capacity(n, 0, n + 5 * n * n.saturating_sub(1) / 2);
    for i in 0..n {
        let t = i as Qubit;
        push(&mut c, GateKind::H, &[t], &[]);
        for j in i + 1..n {
            let ctl = j as Qubit;
            let half = PI / f64::powi(2.0, (j - i) as i32 + 1);
            push(&mut c, GateKind::U1, &[ctl], &[half]);
            push(&mut c, GateKind::CX, &[ctl, t], &[]);
            push(&mut c, GateKind::U1, &[t], &[-half]);
            push(&mut c, GateKind::CX, &[ctl, t], &[]);
            push(&mut c, GateKind::U1, &[t], &[half]);
        }
    }
    c
}

/// One Trotter step of a transverse-field Ising chain on `n` spins:
/// a Hadamard layer, `ZZ` couplings as `cx; rz; cx` on even then odd
/// bonds, and an `rx` field layer.
pub fn ising(n: usize) -> Circuit {
    let mut c = Circuit::with_capacity(n, 0, 5 * n);
    for q in 0..n as Qubit {
        push(&mut c, GateKind::H, &[q], &[]);
    }
    for parity in 0..2 {
        for a in (parity..n.saturating_sub(1)).step_by(2) {
            let (a, b) = (a as Qubit, a as Qubit + 1);
            push(&mut c, GateKind::CX, &[a, b], &[]);
            push(&mut c, GateKind::RZ, &[b], &[0.2]);
            push(&mut c, GateKind::CX, &[a, b], &[]);
        }
    }
    for q in 0..n as Qubit {
        push(&mut c, GateKind::RX, &[q], &[0.4]);
    }
    c
}
