// SPDX-License-Identifier: Apache-2.0

//! Passes aimed at downstream simulators: routing inside a small region of
//! the device, and relabeling qubits so busy qubits land on preferred slots.

use std::str::FromStr;

use thiserror::Error;

use crate::device::{select_limited_region, DeviceError, DeviceModel};
use crate::ir::{Circuit, Qubit};
use crate::route::{route, RouteError, RouteOutput, RouterConfig};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PriorityError {
    #[error("qubit {0} appears twice in the priority order")]
    Duplicate(Qubit),
    #[error("priority names qubit {index} but the circuit has {num_qubits}")]
    OutOfRange { index: Qubit, num_qubits: usize },
    #[error("malformed priority list `{0}`")]
    Parse(String),
}

/// Qubit indices from highest to lowest priority. May be partial.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct QubitPriority {
    order: Vec<Qubit>,
}

impl QubitPriority {
    pub fn new(order: Vec<Qubit>) -> Result<Self, PriorityError> {
        let mut seen = std::collections::HashSet::new();
        if let Some(&dup) = order.iter().find(|&&q| !seen.insert(q)) {
            return Err(PriorityError::Duplicate(dup));
        }
        Ok(QubitPriority { order })
    }

    pub fn order(&self) -> &[Qubit] {
        &self.order
    }

    /// Full order over `n` qubits: listed entries first, then the rest in
    /// ascending order.
    pub fn completed(&self, n: usize) -> Result<Vec<Qubit>, PriorityError> {
        let mut listed = vec![false; n];
        for &q in &self.order {
            let slot = listed.get_mut(q as usize).ok_or(PriorityError::OutOfRange {
                index: q,
                num_qubits: n,
            })?;
            *slot = true;
        }
        let mut full = self.order.clone();
        full.extend((0..n as Qubit).filter(|&q| !listed[q as usize]));
        Ok(full)
    }
}

impl FromStr for QubitPriority {
    type Err = PriorityError;

    /// Parses a comma list such as `2,0,1`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let order = s
            .split(',')
            .map(|t| t.trim().parse::<Qubit>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| PriorityError::Parse(s.to_owned()))?;
        QubitPriority::new(order)
    }
}

/// Gates touching each qubit, measurements and barriers excluded.
pub fn gate_counts(c: &Circuit) -> Vec<usize> {
    let mut counts = vec![0; c.num_qubits()];
    for g in c.gates().iter().filter(|g| !g.kind().is_directive()) {
        for &q in g.qubits() {
            counts[q as usize] += 1;
        }
    }
    counts
}

/// `perm[old] = new`: the busiest qubit moves to the highest-priority
/// index, the next busiest to the next, ties by ascending index.
pub fn priority_permutation(c: &Circuit, prio: &QubitPriority) -> Result<Vec<Qubit>, PriorityError> {
    let slots = prio.completed(c.num_qubits())?;
    let counts = gate_counts(c);
    let mut busiest: Vec<Qubit> = (0..c.num_qubits() as Qubit).collect();
    busiest.sort_by(|&a, &b| counts[b as usize].cmp(&counts[a as usize]).then(a.cmp(&b)));
    let mut perm = vec![0; c.num_qubits()];
    for (&old, &new) in busiest.iter().zip(&slots) {
        perm[old as usize] = new;
    }
    Ok(perm)
}

pub fn prioritize_qubits(c: &Circuit, prio: &QubitPriority) -> Result<Circuit, PriorityError> {
    let perm = priority_permutation(c, prio)?;
    Ok(c.relabeled(&perm, c.num_qubits()))
}

#[derive(Debug, Error)]
pub enum ConstrainedError {
    #[error(transparent)]
    Device(#[from] DeviceError),
    #[error(transparent)]
    Route(#[from] RouteError),
}

/// Routed circuit over the local ids of a device region.
#[derive(Debug, Clone)]
pub struct ConstrainedOutput {
    pub routed: RouteOutput,
    /// Region vertex to device qubit.
    pub physical_ids: Vec<u32>,
}

/// Routes `c` inside the `c.num_qubits()`-vertex region picked by
/// [`select_limited_region`] instead of over the whole device.
pub fn constrained_transpile(
    c: &Circuit,
    d: &DeviceModel,
    cfg: &RouterConfig,
) -> Result<ConstrainedOutput, ConstrainedError> {
    let region = select_limited_region(d, c.num_qubits().max(1))?;
    let routed = route(c, &region, cfg)?;
    Ok(ConstrainedOutput {
        routed,
        physical_ids: region.physical_ids().to_vec(),
    })
}
