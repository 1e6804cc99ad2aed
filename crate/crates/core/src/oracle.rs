// SPDX-License-Identifier: Apache-2.0

//! Dense unitary construction for small circuits, used to check that a pass
//! preserved semantics.

use rayon::prelude::*;
use thiserror::Error;

use crate::ir::{gate_unitary, Circuit, IrError, Matrix, C64};

/// Largest register the oracle will expand (a 4096 × 4096 unitary).
pub const MAX_QUBITS: usize = 12;

pub type Unitary = Matrix;

#[derive(Debug, Error)]
pub enum OracleError {
    #[error("circuit has {0} qubits; the oracle supports at most {MAX_QUBITS}")]
    TooManyQubits(usize),
    #[error(transparent)]
    Gate(#[from] IrError),
}

/// The ordered product of the circuit's gate unitaries. Measurements and
/// barriers are skipped. Qubit `q` is bit `q` of the basis index.
pub fn circuit_unitary(c: &Circuit) -> Result<Unitary, OracleError> {
    let n = c.num_qubits();
    if n > MAX_QUBITS {
        return Err(OracleError::TooManyQubits(n));
    }
    let ops = c
        .gates()
        .iter()
        .filter(|g| !g.kind().is_directive())
        .map(|g| {
            let qubits: Vec<usize> = g.qubits().iter().map(|&q| q as usize).collect();
            gate_unitary(g).map(|m| (m, qubits))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let dim = 1usize << n;
    let columns: Vec<Vec<C64>> = (0..dim)
        .into_par_iter()
        .map(|j| {
            let mut state = vec![C64::new(0.0, 0.0); dim];
            state[j] = C64::new(1.0, 0.0);
            for (m, qubits) in &ops {
                Matrix::apply_to_state(m, qubits, &mut state);
            }
            state
        })
        .collect();
    let mut u = Matrix::zeros(dim);
    for (j, col) in columns.iter().enumerate() {
        for (i, &v) in col.iter().enumerate() {
            u.set(i, j, v);
        }
    }
    Ok(u)
}

/// Basis index after moving the value of bit `q` to bit `perm[q]`.
pub fn permute_index(index: usize, perm: &[usize]) -> usize {
    perm.iter()
        .enumerate()
        .fold(0, |acc, (q, &p)| acc | (((index >> q) & 1) << p))
}

/// Whether `u1 = e^{iα} · P(perm) · u2` for some global phase `α`, where
/// `P(perm)` sends qubit `q` to qubit `perm[q]`.
///
/// The phase is read off the largest-magnitude entry of `u2`.
pub fn equivalent_up_to_phase_and_perm(u1: &Unitary, u2: &Unitary, perm: &[usize], tol: f64) -> bool {
    let dim = u1.dim();
    if u2.dim() != dim || 1usize << perm.len() != dim {
        return false;
    }
    let rows: Vec<usize> = (0..dim).map(|i| permute_index(i, perm)).collect();
    let (mut best, mut anchor) = (-1.0, (0, 0));
    for i in 0..dim {
        for j in 0..dim {
            let m = u2.get(i, j).norm();
            if m > best {
                best = m;
                anchor = (i, j);
            }
        }
    }
    let (ai, aj) = anchor;
    let target = u1.get(rows[ai], aj);
    if target.norm() < 1e-12 {
        return false;
    }
    let ratio = target / u2.get(ai, aj);
    let phase = ratio / ratio.norm();
    (0..dim).all(|i| (0..dim).all(|j| (u1.get(rows[i], j) - phase * u2.get(i, j)).norm() <= tol))
}

/// `P(perm) · u · P(perm)^-1`: the unitary of the same circuit after
/// relabeling qubit `q` as `perm[q]`.
pub fn conjugate_by_perm(u: &Unitary, perm: &[usize]) -> Unitary {
    let dim = u.dim();
    let idx: Vec<usize> = (0..dim).map(|i| permute_index(i, perm)).collect();
    let mut out = Matrix::zeros(dim);
    for i in 0..dim {
        for j in 0..dim {
            out.set(idx[i], idx[j], u.get(i, j));
        }
    }
    out
}
