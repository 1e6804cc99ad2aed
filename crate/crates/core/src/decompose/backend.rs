// SPDX-License-Identifier: Apache-2.0

//! Basis-translation strategies, one per hardware family, looked up by name.

use std::f64::consts::{FRAC_PI_2, PI};
use std::sync::OnceLock;

use super::euler::{normalize_angle, Euler, ANGLE_EPS};
use crate::ir::{Gate, GateKind, Qubit};

/// Lowers gates into one backend's native set.
///
/// `lower_1q` must emit basis gates only. `lower_2q` may emit any library
/// gates; the caller keeps lowering its output until everything is native.
pub trait BasisBackend: Send + Sync {
    fn name(&self) -> &'static str;

    /// Native unitary gates.
    fn basis(&self) -> &'static [GateKind];

    /// Whether routing should expand SWAP into three CX on insertion.
    fn cx_native(&self) -> bool {
        self.basis().contains(&GateKind::CX)
    }

    fn lower_1q(&self, q: Qubit, e: Euler, out: &mut Vec<Gate>);

    /// Backend-specific rule for a two-qubit gate. Every backend must handle
    /// CX; other gates fall back to their library definitions when `None`.
    fn lower_2q(&self, gate: &Gate) -> Option<Vec<Gate>>;
}

fn g(kind: GateKind, qubits: &[Qubit], params: &[f64]) -> Gate {
    Gate::raw(kind, qubits, params)
}

fn near(a: f64, b: f64) -> bool {
    (a - b).abs() < ANGLE_EPS
}

/// Z rotations interleaved with a fixed `sqrt(X)`-like pulse:
/// `z(lambda) . sx . z(theta + pi) . sx . z(phi + pi)`, with shorter forms for
/// `theta` of 0 and `pi/2`.
fn zsx(q: Qubit, e: Euler, z: GateKind, sx: &Gate, out: &mut Vec<Gate>) {
    let rz = |a: f64, out: &mut Vec<Gate>| {
        let a = normalize_angle(a);
        if a.abs() >= ANGLE_EPS {
            out.push(g(z, &[q], &[a]));
        }
    };
    if near(e.theta, 0.0) {
        rz(e.phi + e.lambda, out);
    } else if near(e.theta, FRAC_PI_2) {
        rz(e.lambda - FRAC_PI_2, out);
        out.push(sx.clone());
        rz(e.phi + FRAC_PI_2, out);
    } else {
        rz(e.lambda, out);
        out.push(sx.clone());
        rz(e.theta + PI, out);
        out.push(sx.clone());
        rz(e.phi + PI, out);
    }
}

/// `rz(lambda - pi/2) . rx(theta) . rz(phi + pi/2)`.
fn zxz(q: Qubit, e: Euler, out: &mut Vec<Gate>) {
    let rz = |a: f64, out: &mut Vec<Gate>| {
        let a = normalize_angle(a);
        if a.abs() >= ANGLE_EPS {
            out.push(g(GateKind::RZ, &[q], &[a]));
        }
    };
    if near(e.theta, 0.0) {
        rz(e.phi + e.lambda, out);
    } else {
        rz(e.lambda - FRAC_PI_2, out);
        out.push(g(GateKind::RX, &[q], &[normalize_angle(e.theta)]));
        rz(e.phi + FRAC_PI_2, out);
    }
}

pub struct Ibmq;

impl BasisBackend for Ibmq {
    fn name(&self) -> &'static str {
        "ibmq"
    }

    fn basis(&self) -> &'static [GateKind] {
        &[GateKind::Id, GateKind::RZ, GateKind::SX, GateKind::X, GateKind::CX]
    }

    fn lower_1q(&self, q: Qubit, e: Euler, out: &mut Vec<Gate>) {
        zsx(q, e, GateKind::RZ, &g(GateKind::SX, &[q], &[]), out);
    }

    fn lower_2q(&self, gate: &Gate) -> Option<Vec<Gate>> {
        debug_assert_ne!(gate.kind(), GateKind::CX);
        None
    }
}

pub struct Rigetti;

impl BasisBackend for Rigetti {
    fn name(&self) -> &'static str {
        "rigetti"
    }

    fn basis(&self) -> &'static [GateKind] {
        &[GateKind::RX, GateKind::RZ, GateKind::CZ]
    }

    fn lower_1q(&self, q: Qubit, e: Euler, out: &mut Vec<Gate>) {
        zxz(q, e, out);
    }

    fn lower_2q(&self, gate: &Gate) -> Option<Vec<Gate>> {
        let q = gate.qubits();
        match gate.kind() {
            GateKind::CX => Some(vec![
                g(GateKind::H, &[q[1]], &[]),
                g(GateKind::CZ, q, &[]),
                g(GateKind::H, &[q[1]], &[]),
            ]),
            _ => None,
        }
    }
}

pub struct IonQ;

impl BasisBackend for IonQ {
    fn name(&self) -> &'static str {
        "ionq"
    }

    fn basis(&self) -> &'static [GateKind] {
        &[GateKind::GPI, GateKind::GPI2, GateKind::GZ, GateKind::MS]
    }

    fn lower_1q(&self, q: Qubit, e: Euler, out: &mut Vec<Gate>) {
        if near(e.theta, PI) {
            out.push(g(
                GateKind::GPI,
                &[q],
                &[normalize_angle((e.phi - e.lambda + PI) / 2.0)],
            ));
        } else {
            zsx(q, e, GateKind::GZ, &g(GateKind::GPI2, &[q], &[0.0]), out);
        }
    }

    fn lower_2q(&self, gate: &Gate) -> Option<Vec<Gate>> {
        let q = gate.qubits();
        let (c, t) = (q[0], q[1]);
        match gate.kind() {
            // ms(pi, 0) is exp(+i pi/4 XX); the one-qubit layers turn it into CX.
            GateKind::CX => Some(vec![
                g(GateKind::H, &[c], &[]),
                g(GateKind::MS, &[c, t], &[PI, 0.0]),
                g(GateKind::H, &[c], &[]),
                g(GateKind::RZ, &[c], &[FRAC_PI_2]),
                g(GateKind::H, &[t], &[]),
                g(GateKind::RZ, &[t], &[FRAC_PI_2]),
                g(GateKind::H, &[t], &[]),
            ]),
            _ => None,
        }
    }
}

pub struct Quantinuum;

impl BasisBackend for Quantinuum {
    fn name(&self) -> &'static str {
        "quantinuum"
    }

    fn basis(&self) -> &'static [GateKind] {
        &[GateKind::RX, GateKind::RZ, GateKind::ZZ]
    }

    fn lower_1q(&self, q: Qubit, e: Euler, out: &mut Vec<Gate>) {
        zxz(q, e, out);
    }

    fn lower_2q(&self, gate: &Gate) -> Option<Vec<Gate>> {
        let q = gate.qubits();
        let (c, t) = (q[0], q[1]);
        match gate.kind() {
            GateKind::CX => Some(vec![
                g(GateKind::H, &[t], &[]),
                g(GateKind::RZ, &[c], &[FRAC_PI_2]),
                g(GateKind::RZ, &[t], &[FRAC_PI_2]),
                g(GateKind::ZZ, &[c, t], &[-FRAC_PI_2]),
                g(GateKind::H, &[t], &[]),
            ]),
            GateKind::RZZ => Some(vec![g(GateKind::ZZ, q, gate.params())]),
            _ => None,
        }
    }
}

/// Named collection of backends.
pub struct BackendRegistry {
    entries: Vec<Box<dyn BasisBackend>>,
}

impl BackendRegistry {
    pub fn empty() -> Self {
        BackendRegistry { entries: Vec::new() }
    }

    /// The four built-in hardware families.
    pub fn standard() -> Self {
        let mut r = Self::empty();
        r.register(Box::new(Ibmq));
        r.register(Box::new(Rigetti));
        r.register(Box::new(IonQ));
        r.register(Box::new(Quantinuum));
        r
    }

    /// Adds a backend, replacing any existing one with the same name.
    pub fn register(&mut self, backend: Box<dyn BasisBackend>) {
        self.entries.retain(|b| b.name() != backend.name());
        self.entries.push(backend);
    }

    pub fn get(&self, name: &str) -> Option<&dyn BasisBackend> {
        self.entries.iter().find(|b| b.name() == name).map(|b| b.as_ref())
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.entries.iter().map(|b| b.name()).collect()
    }
}

/// Process-wide registry holding the standard backends.
pub fn registry() -> &'static BackendRegistry {
    static REGISTRY: OnceLock<BackendRegistry> = OnceLock::new();
    REGISTRY.get_or_init(BackendRegistry::standard)
}
