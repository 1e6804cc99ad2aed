// SPDX-License-Identifier: Apache-2.0

use serde::Serialize;

use crate::ir::{Circuit, GateKind};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CircuitMetrics {
    pub depth: usize,
    pub gate_density: f64,
    pub retention_lifespan: usize,
    pub measurement_density: f64,
    pub entanglement_variance: f64,
}

/// ASAP time step (1-based) of every gate; `0` for barriers and
/// measurements, which take no step. Barriers align their qubits to the
/// latest of them.
pub fn asap_levels(c: &Circuit) -> Vec<usize> {
    let mut frontier = vec![0usize; c.num_qubits()];
    let mut levels = Vec::with_capacity(c.len());
    for g in c.gates() {
        let qs = g.qubits();
        let top = qs.iter().map(|&q| frontier[q as usize]).max().unwrap_or(0);
        let level = match g.kind() {
            GateKind::Barrier | GateKind::Measure => {
                if g.kind() == GateKind::Barrier {
                    for &q in qs {
                        frontier[q as usize] = top;
                    }
                }
                0
            }
            _ => {
                for &q in qs {
                    frontier[q as usize] = top + 1;
                }
                top + 1
            }
        };
        levels.push(level);
    }
    levels
}

pub fn depth(c: &Circuit) -> usize {
    asap_levels(c).into_iter().max().unwrap_or(0)
}

/// Depth, density and lifespan count unitary gates only.
pub fn compute_metrics(c: &Circuit) -> CircuitMetrics {
    let n = c.num_qubits();
    let levels = asap_levels(c);
    let depth = levels.iter().copied().max().unwrap_or(0);
    let mut first = vec![usize::MAX; n];
    let mut last = vec![0usize; n];
    let mut two_q = vec![0usize; n];
    let (mut ops, mut measures) = (0usize, 0usize);
    for (g, &level) in c.gates().iter().zip(&levels) {
        match g.kind() {
            GateKind::Barrier => continue,
            GateKind::Measure => measures += 1,
            _ => {
                ops += 1;
                for &q in g.qubits() {
                    let q = q as usize;
                    first[q] = first[q].min(level);
                    last[q] = last[q].max(level);
                    if g.num_qubits() == 2 {
                        two_q[q] += 1;
                    }
                }
            }
        }
    }
    let retention_lifespan = (0..n)
        .filter(|&q| first[q] != usize::MAX)
        .map(|q| last[q] - first[q] + 1)
        .max()
        .unwrap_or(0);
    let ratio = |a: usize, b: usize| if b == 0 { 0.0 } else { a as f64 / b as f64 };
    let entanglement_variance = if n == 0 {
        0.0
    } else {
        let mean = two_q.iter().sum::<usize>() as f64 / n as f64;
        two_q.iter().map(|&k| (k as f64 - mean).powi(2)).sum::<f64>() / n as f64
    };
    CircuitMetrics {
        depth,
        gate_density: ratio(ops, depth * n),
        retention_lifespan,
        measurement_density: ratio(measures, ops + measures),
        entanglement_variance,
    }
}
