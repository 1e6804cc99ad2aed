// SPDX-License-Identifier: Apache-2.0

//! Gate and circuit intermediate representation shared by every pass.

mod expand;
mod kind;
mod matrix;

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, FRAC_PI_4};

use smallvec::SmallVec;
use thiserror::Error;

pub use expand::expansion;
pub use kind::GateKind;
pub use matrix::{Matrix, C64};

/// Flattened qubit index.
pub type Qubit = u32;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum IrError {
    #[error("unknown gate `{0}`")]
    UnknownGate(String),
    #[error("gate `{kind}` expects {expected} qubit(s), got {got}")]
    QubitArity {
        kind: GateKind,
        expected: usize,
        got: usize,
    },
    #[error("gate `{kind}` expects {expected} parameter(s), got {got}")]
    ParamArity {
        kind: GateKind,
        expected: usize,
        got: usize,
    },
    #[error("gate `{kind}` repeats qubit {qubit}")]
    DuplicateQubit { kind: GateKind, qubit: Qubit },
    #[error("qubit index {qubit} out of range for a {num_qubits}-qubit circuit")]
    QubitOutOfRange { qubit: Qubit, num_qubits: usize },
    #[error("classical bit {clbit} out of range for a {num_clbits}-bit register")]
    ClbitOutOfRange { clbit: Qubit, num_clbits: usize },
    #[error("classical bit {0} is already the target of a measurement")]
    ClbitReused(Qubit),
    #[error("measure must be added with its classical bit")]
    MeasureWithoutClbit,
}

/// One quantum instruction.
///
/// The unitary is not stored; [`Gate::matrix`] computes it on demand.
#[derive(Debug, Clone, PartialEq)]
pub struct Gate {
    kind: GateKind,
    qubits: SmallVec<[Qubit; 3]>,
    params: SmallVec<[f64; 3]>,
    clbit: Option<Qubit>,
}

impl Gate {
    /// Validated constructor for unitary gates and barriers.
    pub fn new(kind: GateKind, qubits: &[Qubit], params: &[f64]) -> Result<Gate, IrError> {
        if kind == GateKind::Measure {
            return Err(IrError::MeasureWithoutClbit);
        }
        Self::check(kind, qubits, params)?;
        Ok(Self::raw(kind, qubits, params))
    }

    pub fn measure(qubit: Qubit, clbit: Qubit) -> Gate {
        Gate {
            kind: GateKind::Measure,
            qubits: SmallVec::from_slice(&[qubit]),
            params: SmallVec::new(),
            clbit: Some(clbit),
        }
    }

    pub fn barrier(qubits: &[Qubit]) -> Gate {
        Self::raw(GateKind::Barrier, qubits, &[])
    }

    /// Unchecked constructor for passes that build gates from known-good templates.
    pub(crate) fn raw(kind: GateKind, qubits: &[Qubit], params: &[f64]) -> Gate {
        debug_assert!(Self::check(kind, qubits, params).is_ok(), "{kind} {qubits:?}");
        Gate {
            kind,
            qubits: SmallVec::from_slice(qubits),
            params: SmallVec::from_slice(params),
            clbit: None,
        }
    }

    fn check(kind: GateKind, qubits: &[Qubit], params: &[f64]) -> Result<(), IrError> {
        if let Some(expected) = kind.num_qubits() {
            if qubits.len() != expected {
                return Err(IrError::QubitArity {
                    kind,
                    expected,
                    got: qubits.len(),
                });
            }
        }
        if params.len() != kind.num_params() {
            return Err(IrError::ParamArity {
                kind,
                expected: kind.num_params(),
                got: params.len(),
            });
        }
        for (i, q) in qubits.iter().enumerate() {
            if qubits[..i].contains(q) {
                return Err(IrError::DuplicateQubit { kind, qubit: *q });
            }
        }
        Ok(())
    }

    pub fn kind(&self) -> GateKind {
        self.kind
    }

    pub fn qubits(&self) -> &[Qubit] {
        &self.qubits
    }

    pub fn params(&self) -> &[f64] {
        &self.params
    }

    /// Classical target of a measurement.
    pub fn clbit(&self) -> Option<Qubit> {
        self.clbit
    }

    pub fn num_qubits(&self) -> usize {
        self.qubits.len()
    }

    /// A unitary acting on exactly two qubits.
    pub fn is_two_qubit(&self) -> bool {
        self.qubits.len() == 2 && !self.kind.is_directive()
    }

    /// Same gate with every qubit passed through `map`.
    pub fn remapped(&self, mut map: impl FnMut(Qubit) -> Qubit) -> Gate {
        Gate {
            kind: self.kind,
            qubits: self.qubits.iter().map(|&q| map(q)).collect(),
            params: self.params.clone(),
            clbit: self.clbit,
        }
    }

    pub(crate) fn with_params(&self, params: &[f64]) -> Gate {
        Gate {
            params: SmallVec::from_slice(params),
            ..self.clone()
        }
    }

    pub fn matrix(&self) -> Result<Matrix, IrError> {
        gate_unitary(self)
    }
}

/// An ordered gate list over a flat qubit range.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Circuit {
    num_qubits: usize,
    num_clbits: usize,
    gates: Vec<Gate>,
    clbit_used: Vec<bool>,
}

impl Circuit {
    pub fn new(num_qubits: usize, num_clbits: usize) -> Circuit {
        Circuit {
            num_qubits,
            num_clbits,
            gates: Vec::new(),
            clbit_used: vec![false; num_clbits],
        }
    }

    pub fn with_capacity(num_qubits: usize, num_clbits: usize, gates: usize) -> Circuit {
        let mut c = Circuit::new(num_qubits, num_clbits);
        c.gates.reserve(gates);
        c
    }

    /// Empty circuit with the same registers.
    pub fn empty_like(&self) -> Circuit {
        Circuit::with_capacity(self.num_qubits, self.num_clbits, self.gates.len())
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn num_clbits(&self) -> usize {
        self.num_clbits
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn into_gates(self) -> Vec<Gate> {
        self.gates
    }

    /// Appends a gate after checking it against the registers.
    pub fn append(&mut self, gate: Gate) -> Result<(), IrError> {
        for &q in gate.qubits() {
            if q as usize >= self.num_qubits {
                return Err(IrError::QubitOutOfRange {
                    qubit: q,
                    num_qubits: self.num_qubits,
                });
            }
        }
        if let Some(c) = gate.clbit {
            let slot = self.clbit_used.get_mut(c as usize).ok_or(IrError::ClbitOutOfRange {
                clbit: c,
                num_clbits: self.num_clbits,
            })?;
            if *slot {
                return Err(IrError::ClbitReused(c));
            }
            *slot = true;
        }
        self.gates.push(gate);
        Ok(())
    }

    /// Appends without range checks. Passes use this when the gate is
    /// derived from an already validated circuit over the same registers.
    pub(crate) fn push(&mut self, gate: Gate) {
        debug_assert!(gate.qubits().iter().all(|&q| (q as usize) < self.num_qubits));
        if let Some(c) = gate.clbit {
            self.clbit_used[c as usize] = true;
        }
        self.gates.push(gate);
    }

    /// `(qubit, clbit)` pairs in measurement order.
    pub fn measure_map(&self) -> Vec<(Qubit, Qubit)> {
        self.gates
            .iter()
            .filter_map(|g| g.clbit.map(|c| (g.qubits[0], c)))
            .collect()
    }

    pub fn two_qubit_gate_count(&self) -> usize {
        self.gates.iter().filter(|g| g.is_two_qubit()).count()
    }

    /// Gates that are neither measurements nor barriers.
    pub fn op_count(&self) -> usize {
        self.gates.iter().filter(|g| !g.kind.is_directive()).count()
    }

    /// Copy of the circuit without measurements and barriers.
    pub fn without_directives(&self) -> Circuit {
        let mut out = Circuit::new(self.num_qubits, self.num_clbits);
        out.gates = self.gates.iter().filter(|g| !g.kind.is_directive()).cloned().collect();
        out
    }

    /// Same circuit on a larger (or equal) qubit register.
    pub fn widened(&self, num_qubits: usize) -> Circuit {
        assert!(num_qubits >= self.num_qubits);
        Circuit {
            num_qubits,
            ..self.clone()
        }
    }

    /// Relabels every qubit through `perm`, which must be a bijection onto
    /// `0..new_num_qubits`.
    pub fn relabeled(&self, perm: &[Qubit], new_num_qubits: usize) -> Circuit {
        let mut out = Circuit::with_capacity(new_num_qubits, self.num_clbits, self.gates.len());
        for g in &self.gates {
            out.push(g.remapped(|q| perm[q as usize]));
        }
        out
    }
}

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

fn phase(angle: f64) -> C64 {
    C64::from_polar(1.0, angle)
}

fn m2(a: C64, b: C64, cc: C64, d: C64) -> Matrix {
    Matrix::from_rows(vec![a, b, cc, d])
}

fn u3(theta: f64, phi: f64, lambda: f64) -> Matrix {
    let (s, co) = (theta / 2.0).sin_cos();
    m2(c(co, 0.0), -phase(lambda) * s, phase(phi) * s, phase(phi + lambda) * co)
}

fn diag(entries: &[C64]) -> Matrix {
    let mut m = Matrix::zeros(entries.len());
    for (i, &v) in entries.iter().enumerate() {
        m.set(i, i, v);
    }
    m
}

/// The unitary of `gate`, with the first listed qubit as the most
/// significant bit of the local index. Composition gates are the product of
/// their standard-gate definition.
pub fn gate_unitary(gate: &Gate) -> Result<Matrix, IrError> {
    use GateKind::*;
    let p = gate.params();
    let zero = c(0.0, 0.0);
    let one = c(1.0, 0.0);
    let i = c(0.0, 1.0);
    let m = match gate.kind() {
        U3 => u3(p[0], p[1], p[2]),
        U2 => u3(FRAC_PI_2, p[0], p[1]),
        U1 => diag(&[one, phase(p[0])]),
        Id => Matrix::identity(2),
        X => m2(zero, one, one, zero),
        Y => m2(zero, -i, i, zero),
        Z => diag(&[one, -one]),
        H => {
            let h = c(FRAC_1_SQRT_2, 0.0);
            m2(h, h, h, -h)
        }
        S => diag(&[one, i]),
        Sdg => diag(&[one, -i]),
        T => diag(&[one, phase(FRAC_PI_4)]),
        Tdg => diag(&[one, phase(-FRAC_PI_4)]),
        RX => {
            let (s, co) = (p[0] / 2.0).sin_cos();
            m2(c(co, 0.0), c(0.0, -s), c(0.0, -s), c(co, 0.0))
        }
        RY => {
            let (s, co) = (p[0] / 2.0).sin_cos();
            m2(c(co, 0.0), c(-s, 0.0), c(s, 0.0), c(co, 0.0))
        }
        RZ | GZ => diag(&[phase(-p[0] / 2.0), phase(p[0] / 2.0)]),
        SX => m2(c(0.5, 0.5), c(0.5, -0.5), c(0.5, -0.5), c(0.5, 0.5)),
        SXdg => m2(c(0.5, -0.5), c(0.5, 0.5), c(0.5, 0.5), c(0.5, -0.5)),
        GPI => m2(zero, phase(-p[0]), phase(p[0]), zero),
        GPI2 => {
            let s = FRAC_1_SQRT_2;
            m2(c(s, 0.0), -i * phase(-p[0]) * s, -i * phase(p[0]) * s, c(s, 0.0))
        }
        CX => {
            let mut m = Matrix::identity(4);
            m.set(2, 2, zero);
            m.set(3, 3, zero);
            m.set(2, 3, one);
            m.set(3, 2, one);
            m
        }
        MS => {
            let s = FRAC_1_SQRT_2;
            let (p0, p1) = (p[0], p[1]);
            let mut m = Matrix::identity(4).scale(c(s, 0.0));
            m.set(0, 3, -i * phase(-(p0 + p1)) * s);
            m.set(1, 2, -i * phase(-(p0 - p1)) * s);
            m.set(2, 1, -i * phase(p0 - p1) * s);
            m.set(3, 0, -i * phase(p0 + p1) * s);
            m
        }
        ZZ => {
            let (a, b) = (phase(-p[0] / 2.0), phase(p[0] / 2.0));
            diag(&[a, b, b, a])
        }
        C4X => return Err(IrError::UnknownGate(C4X.name().to_owned())),
        Measure | Barrier => return Err(IrError::UnknownGate(gate.kind().name().to_owned())),
        _ => return composite_unitary(gate),
    };
    Ok(m)
}

fn composite_unitary(gate: &Gate) -> Result<Matrix, IrError> {
    let k = gate.num_qubits();
    // Local qubit j sits at bit k-1-j so the result is MSB-first.
    let local: Vec<Qubit> = (0..k as Qubit).rev().collect();
    let probe = Gate::raw(gate.kind(), &local, gate.params());
    let body = expansion(&probe).ok_or_else(|| IrError::UnknownGate(gate.kind().name().to_owned()))?;
    let dim = 1usize << k;
    let mut columns = Vec::with_capacity(dim);
    let mats = body
        .iter()
        .map(|g| {
            Ok((
                gate_unitary(g)?,
                g.qubits().iter().map(|&q| q as usize).collect::<Vec<_>>(),
            ))
        })
        .collect::<Result<Vec<_>, IrError>>()?;
    for col in 0..dim {
        let mut state = vec![C64::new(0.0, 0.0); dim];
        state[col] = C64::new(1.0, 0.0);
        for (m, qs) in &mats {
            Matrix::apply_to_state(m, qs, &mut state);
        }
        columns.push(state);
    }
    let mut out = Matrix::zeros(dim);
    for (col, state) in columns.into_iter().enumerate() {
        for (row, v) in state.into_iter().enumerate() {
            out.set(row, col, v);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::f64::consts::PI;

    fn g(kind: GateKind, qubits: &[Qubit], params: &[f64]) -> Gate {
        Gate::new(kind, qubits, params).unwrap()
    }

    /// Global-phase-insensitive comparison.
    fn equal_up_to_phase(a: &Matrix, b: &Matrix, tol: f64) -> bool {
        let (idx, _) = b
            .as_slice()
            .iter()
            .enumerate()
            .max_by(|x, y| x.1.norm().total_cmp(&y.1.norm()))
            .unwrap();
        let ph = a.as_slice()[idx] / b.as_slice()[idx];
        a.max_abs_diff(&b.scale(ph)) <= tol
    }

    /// Controlled-U with the control as the most significant bit.
    fn controlled(u: &Matrix) -> Matrix {
        let n = u.dim();
        let mut m = Matrix::identity(2 * n);
        for r in 0..n {
            for cc in 0..n {
                m.set(n + r, n + cc, u.get(r, cc));
            }
        }
        m
    }

    fn permutation(dim: usize, f: impl Fn(usize) -> usize) -> Matrix {
        let mut m = Matrix::zeros(dim);
        for col in 0..dim {
            m.set(f(col), col, C64::new(1.0, 0.0));
        }
        m
    }

    #[test]
    fn pauli_x_and_zero_phase() {
        let x = gate_unitary(&g(GateKind::X, &[0], &[])).unwrap();
        assert_eq!(x.real_parts(), vec![0.0, 1.0, 1.0, 0.0]);
        let u1 = gate_unitary(&g(GateKind::U1, &[0], &[0.0])).unwrap();
        assert!(u1.max_abs_diff(&Matrix::identity(2)) < 1e-15);
    }

    #[test]
    fn ccx_is_the_toffoli_permutation() {
        // Truth table: flip the last bit when both leading bits are set.
        let truth = permutation(8, |i| if i >= 6 { i ^ 1 } else { i });
        let u = gate_unitary(&g(GateKind::CCX, &[0, 1, 2], &[])).unwrap();
        assert!(u.max_abs_diff(&truth) < 1e-9, "{u:?}");
    }

    #[test]
    fn cswap_is_the_fredkin_permutation() {
        let truth = permutation(8, |i| {
            if i >= 4 {
                (i & 4) | ((i & 1) << 1) | ((i >> 1) & 1)
            } else {
                i
            }
        });
        let u = gate_unitary(&g(GateKind::CSwap, &[0, 1, 2], &[])).unwrap();
        assert!(u.max_abs_diff(&truth) < 1e-9);
    }

    #[test]
    fn multi_controlled_gates_match_block_constructions() {
        let x = gate_unitary(&g(GateKind::X, &[0], &[])).unwrap();
        let sx = gate_unitary(&g(GateKind::SX, &[0], &[])).unwrap();
        let c3x = controlled(&controlled(&controlled(&x)));
        let c3sx = controlled(&controlled(&controlled(&sx)));
        let u = gate_unitary(&g(GateKind::C3X, &[0, 1, 2, 3], &[])).unwrap();
        assert!(equal_up_to_phase(&u, &c3x, 1e-9));
        let u = gate_unitary(&g(GateKind::C3SqrtX, &[0, 1, 2, 3], &[])).unwrap();
        assert!(equal_up_to_phase(&u, &c3sx, 1e-9));
    }

    #[test]
    fn relative_phase_toffolis_agree_on_magnitudes() {
        let truth3 = permutation(8, |i| if i >= 6 { i ^ 1 } else { i });
        let u = gate_unitary(&g(GateKind::RCCX, &[0, 1, 2], &[])).unwrap();
        for r in 0..8 {
            for cc in 0..8 {
                assert!((u.get(r, cc).norm() - truth3.get(r, cc).norm()).abs() < 1e-9);
            }
        }
        let truth4 = permutation(16, |i| if i >= 14 { i ^ 1 } else { i });
        let u = gate_unitary(&g(GateKind::RC3X, &[0, 1, 2, 3], &[])).unwrap();
        for r in 0..16 {
            for cc in 0..16 {
                assert!((u.get(r, cc).norm() - truth4.get(r, cc).norm()).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn controlled_rotations_match_block_constructions() {
        for &theta in &[0.3, -1.2, PI, 2.5] {
            for (ck, uk) in [
                (GateKind::CRX, GateKind::RX),
                (GateKind::CRY, GateKind::RY),
                (GateKind::CRZ, GateKind::RZ),
                (GateKind::CU1, GateKind::U1),
            ] {
                let expect = controlled(&gate_unitary(&g(uk, &[0], &[theta])).unwrap());
                let got = gate_unitary(&g(ck, &[0, 1], &[theta])).unwrap();
                assert!(got.max_abs_diff(&expect) < 1e-9, "{ck} {theta}");
            }
        }
        let params = [0.4, -0.9, 1.7];
        let expect = controlled(&gate_unitary(&g(GateKind::U3, &[0], &params)).unwrap());
        let got = gate_unitary(&g(GateKind::CU3, &[0, 1], &params)).unwrap();
        assert!(got.max_abs_diff(&expect) < 1e-9);
        for (ck, uk) in [
            (GateKind::CZ, GateKind::Z),
            (GateKind::CY, GateKind::Y),
            (GateKind::CH, GateKind::H),
        ] {
            let expect = controlled(&gate_unitary(&g(uk, &[0], &[])).unwrap());
            let got = gate_unitary(&g(ck, &[0, 1], &[])).unwrap();
            assert!(equal_up_to_phase(&got, &expect, 1e-9), "{ck}");
        }
    }

    #[test]
    fn two_qubit_rotations_match_exponentials() {
        let theta: f64 = 0.77;
        let (s, co) = (theta / 2.0).sin_cos();
        let zz = gate_unitary(&g(GateKind::RZZ, &[0, 1], &[theta])).unwrap();
        let native = gate_unitary(&g(GateKind::ZZ, &[0, 1], &[theta])).unwrap();
        assert!(zz.max_abs_diff(&native) < 1e-12);
        // exp(-i θ/2 X⊗X) = cos I - i sin X⊗X
        let x = gate_unitary(&g(GateKind::X, &[0], &[])).unwrap();
        let xx = x.kron(&x);
        let mut expect = Matrix::identity(4).scale(C64::new(co, 0.0));
        for r in 0..4 {
            for cc in 0..4 {
                let v = expect.get(r, cc) + xx.get(r, cc) * C64::new(0.0, -s);
                expect.set(r, cc, v);
            }
        }
        let rxx = gate_unitary(&g(GateKind::RXX, &[0, 1], &[theta])).unwrap();
        assert!(rxx.max_abs_diff(&expect) < 1e-12);
        let ms = gate_unitary(&g(GateKind::MS, &[0, 1], &[0.0, 0.0])).unwrap();
        let rxx = gate_unitary(&g(GateKind::RXX, &[0, 1], &[std::f64::consts::FRAC_PI_2])).unwrap();
        assert!(ms.max_abs_diff(&rxx) < 1e-12);
    }

    #[test]
    fn swap_exchanges_qubits() {
        let u = gate_unitary(&g(GateKind::Swap, &[0, 1], &[])).unwrap();
        let truth = permutation(4, |i| ((i & 1) << 1) | (i >> 1));
        assert!(u.max_abs_diff(&truth) < 1e-12);
    }

    #[test]
    fn c4x_and_directives_are_rejected() {
        let err = gate_unitary(&g(GateKind::C4X, &[0, 1, 2, 3, 4], &[])).unwrap_err();
        assert_eq!(err.to_string(), "unknown gate `c4x`");
        assert!(gate_unitary(&Gate::measure(0, 0)).is_err());
    }

    #[test]
    fn composite_unitary_equals_expansion_product() {
        // CZ = (I⊗H)·CX·(I⊗H) through kron algebra rather than column simulation.
        let cz = gate_unitary(&g(GateKind::CZ, &[0, 1], &[])).unwrap();
        let h = gate_unitary(&g(GateKind::H, &[0], &[])).unwrap();
        let ih = Matrix::identity(2).kron(&h);
        let cx = gate_unitary(&g(GateKind::CX, &[0, 1], &[])).unwrap();
        let product = &(&ih * &cx) * &ih;
        assert!(cz.max_abs_diff(&product) < 1e-12);
    }

    #[test]
    fn gate_new_checks_invariants() {
        assert!(matches!(
            Gate::new(GateKind::CX, &[0, 0], &[]),
            Err(IrError::DuplicateQubit { .. })
        ));
        assert!(matches!(
            Gate::new(GateKind::U3, &[0], &[1.0]),
            Err(IrError::ParamArity { .. })
        ));
        assert!(matches!(
            Gate::new(GateKind::H, &[0, 1], &[]),
            Err(IrError::QubitArity { .. })
        ));
    }

    #[test]
    fn append_keeps_order_and_checks_bounds() {
        let mut c = Circuit::new(2, 0);
        c.append(g(GateKind::H, &[0], &[])).unwrap();
        assert_eq!(c.len(), 1);
        c.append(g(GateKind::X, &[1], &[])).unwrap();
        let kinds: Vec<_> = c.gates().iter().map(|g| g.kind()).collect();
        assert_eq!(kinds, vec![GateKind::H, GateKind::X]);
        let err = c.append(g(GateKind::CX, &[0, 5], &[])).unwrap_err();
        assert!(matches!(err, IrError::QubitOutOfRange { qubit: 5, .. }));
    }

    #[test]
    fn measure_map_tracks_clbits() {
        let mut c = Circuit::new(2, 2);
        c.append(Gate::measure(1, 0)).unwrap();
        assert_eq!(c.measure_map(), vec![(1, 0)]);
        assert_eq!(c.append(Gate::measure(0, 0)), Err(IrError::ClbitReused(0)));
        assert!(c.append(Gate::measure(0, 2)).is_err());
    }

    #[test]
    fn two_qubit_count() {
        let mut c = Circuit::new(3, 0);
        assert_eq!(c.two_qubit_gate_count(), 0);
        c.append(g(GateKind::H, &[0], &[])).unwrap();
        c.append(g(GateKind::CX, &[0, 1], &[])).unwrap();
        c.append(g(GateKind::CX, &[1, 2], &[])).unwrap();
        c.append(Gate::barrier(&[0, 1])).unwrap();
        assert_eq!(c.two_qubit_gate_count(), 2);
    }

    fn random_gate() -> impl Strategy<Value = Gate> {
        let kinds: Vec<GateKind> = GateKind::ALL
            .iter()
            .copied()
            .filter(|k| !k.is_directive() && *k != GateKind::C4X)
            .collect();
        (prop::sample::select(kinds), prop::collection::vec(-10.0f64..10.0, 3)).prop_map(|(kind, angles)| {
            let n = kind.num_qubits().unwrap() as Qubit;
            let qubits: Vec<Qubit> = (0..n).collect();
            Gate::new(kind, &qubits, &angles[..kind.num_params()]).unwrap()
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]
        #[test]
        fn every_gate_unitary_is_unitary(gate in random_gate()) {
            let m = gate_unitary(&gate).unwrap();
            prop_assert_eq!(m.dim(), 1 << gate.num_qubits());
            prop_assert!(m.is_unitary(1e-9));
        }

        #[test]
        fn append_preserves_order(kinds in prop::collection::vec(0usize..4, 0..50)) {
            let table = [GateKind::H, GateKind::X, GateKind::T, GateKind::S];
            let mut c = Circuit::new(1, 0);
            for &k in &kinds {
                c.append(g(table[k], &[0], &[])).unwrap();
            }
            let got: Vec<GateKind> = c.gates().iter().map(|g| g.kind()).collect();
            let want: Vec<GateKind> = kinds.iter().map(|&k| table[k]).collect();
            prop_assert_eq!(got, want);
        }
    }
}
