// SPDX-License-Identifier: Apache-2.0

use super::euler::{is_zero_angle, normalize_angle};
use crate::ir::{Circuit, Gate, GateKind};

fn is_rotation(kind: GateKind) -> bool {
    matches!(kind, GateKind::RZ | GateKind::RX | GateKind::GZ | GateKind::U1)
}

/// Merges adjacent same-axis rotations on a qubit and drops rotations by a
/// multiple of `2*pi`. Nothing else is reordered or removed.
pub fn fold_1q_runs(c: &Circuit) -> Circuit {
    let mut out: Vec<Option<Gate>> = Vec::with_capacity(c.len());
    // Live output gates touching each qubit, most recent on top.
    let mut stacks: Vec<Vec<usize>> = vec![Vec::new(); c.num_qubits()];
    for gate in c.gates() {
        let kind = gate.kind();
        if is_rotation(kind) {
            let q = gate.qubits()[0] as usize;
            let angle = gate.params()[0];
            let top = stacks[q].last().copied();
            match top {
                Some(i) if out[i].as_ref().is_some_and(|p| p.kind() == kind) => {
                    let merged = normalize_angle(out[i].as_ref().unwrap().params()[0] + angle);
                    if is_zero_angle(merged) {
                        out[i] = None;
                        stacks[q].pop();
                    } else {
                        out[i] = Some(gate.with_params(&[merged]));
                    }
                }
                _ if is_zero_angle(angle) => {}
                _ => {
                    stacks[q].push(out.len());
                    out.push(Some(gate.clone()));
                }
            }
            continue;
        }
        for &q in gate.qubits() {
            stacks[q as usize].push(out.len());
        }
        out.push(Some(gate.clone()));
    }
    let mut folded = c.empty_like();
    for g in out.into_iter().flatten() {
        folded.push(g);
    }
    folded
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{circuit_unitary, equivalent_up_to_phase_and_perm};
    use proptest::prelude::*;
    use std::f64::consts::PI;

    fn build(n: usize, gates: &[(GateKind, &[u32], &[f64])]) -> Circuit {
        let mut c = Circuit::new(n, 0);
        for &(k, q, p) in gates {
            c.append(Gate::new(k, q, p).unwrap()).unwrap();
        }
        c
    }

    #[test]
    fn adds_adjacent_angles() {
        let c = build(
            1,
            &[(GateKind::RZ, &[0], &[PI / 4.0]), (GateKind::RZ, &[0], &[PI / 4.0])],
        );
        let f = fold_1q_runs(&c);
        assert_eq!(f.len(), 1);
        assert_eq!(f.gates()[0].params(), &[PI / 2.0]);
    }

    #[test]
    fn interleaved_gate_blocks_merging() {
        let c = build(
            1,
            &[
                (GateKind::RZ, &[0], &[0.3]),
                (GateKind::X, &[0], &[]),
                (GateKind::RZ, &[0], &[0.4]),
            ],
        );
        assert_eq!(fold_1q_runs(&c), c);
    }

    #[test]
    fn zero_rotation_is_removed() {
        let c = build(1, &[(GateKind::RZ, &[0], &[0.0])]);
        assert!(fold_1q_runs(&c).is_empty());
    }

    #[test]
    fn cancellation_exposes_earlier_rotation() {
        let c = build(
            2,
            &[
                (GateKind::RZ, &[0], &[0.3]),
                (GateKind::RX, &[0], &[0.2]),
                (GateKind::RX, &[0], &[-0.2]),
                (GateKind::RZ, &[0], &[0.4]),
                (GateKind::CX, &[0, 1], &[]),
                (GateKind::RZ, &[0], &[0.1]),
            ],
        );
        let f = fold_1q_runs(&c);
        let kinds: Vec<_> = f.gates().iter().map(|g| g.kind()).collect();
        assert_eq!(kinds, vec![GateKind::RZ, GateKind::CX, GateKind::RZ]);
        assert!((f.gates()[0].params()[0] - 0.7).abs() < 1e-15);
    }

    #[test]
    fn other_qubits_do_not_block() {
        let c = build(
            2,
            &[
                (GateKind::RZ, &[0], &[0.3]),
                (GateKind::H, &[1], &[]),
                (GateKind::RZ, &[0], &[0.4]),
            ],
        );
        assert_eq!(fold_1q_runs(&c).len(), 2);
    }

    fn random_circuit() -> impl Strategy<Value = Circuit> {
        let gate = (0usize..6, 0u32..3, 1u32..3, -PI..PI).prop_map(|(k, a, d, t)| {
            let t = if k % 2 == 0 { (t * 2.0).round() / 2.0 } else { t };
            match k {
                0 | 1 => Gate::new(GateKind::RZ, &[a], &[t]).unwrap(),
                2 => Gate::new(GateKind::RX, &[a], &[t]).unwrap(),
                3 => Gate::new(GateKind::U1, &[a], &[t]).unwrap(),
                4 => Gate::new(GateKind::SX, &[a], &[]).unwrap(),
                _ => Gate::new(GateKind::CX, &[a, (a + d) % 3], &[]).unwrap(),
            }
        });
        proptest::collection::vec(gate, 0..40).prop_map(|gs| {
            let mut c = Circuit::new(3, 0);
            for g in gs {
                c.append(g).unwrap();
            }
            c
        })
    }

    proptest! {
        #[test]
        fn folding_preserves_semantics(c in random_circuit()) {
            let f = fold_1q_runs(&c);
            prop_assert!(f.len() <= c.len());
            let (u, v) = (circuit_unitary(&c).unwrap(), circuit_unitary(&f).unwrap());
            prop_assert!(equivalent_up_to_phase_and_perm(&v, &u, &[0, 1, 2], 1e-9));
            prop_assert_eq!(fold_1q_runs(&f).len(), f.len());
        }
    }
}
