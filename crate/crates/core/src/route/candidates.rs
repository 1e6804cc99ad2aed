// SPDX-License-Identifier: Apache-2.0

use super::Mapping;
use crate::device::CouplingGraph;
use crate::ir::Qubit;

/// SWAP candidates for a front layer of logical qubit pairs.
///
/// With `radius = Some(r)` an edge qualifies when one endpoint is at most
/// `r - 1` hops from a physical qubit holding a front-gate operand, so
/// `r = 1` keeps exactly the edges incident to those qubits. `None` keeps
/// every edge. The result is sorted and duplicate-free.
pub fn prune_candidates(
    front: &[(Qubit, Qubit)],
    mapping: &Mapping,
    g: &CouplingGraph,
    radius: Option<u32>,
) -> Vec<(Qubit, Qubit)> {
    let mut scratch = BallScratch::new(g.len());
    let operands: Vec<Qubit> = front
        .iter()
        .flat_map(|&(a, b)| [mapping.phys(a), mapping.phys(b)])
        .collect();
    let mut out = Vec::new();
    candidates_into(&operands, g, radius, &mut scratch, &mut out);
    out.sort_unstable();
    out
}

/// Reusable buffers for the multi-source BFS behind candidate pruning.
pub(crate) struct BallScratch {
    depth: Vec<u32>,
    queue: Vec<Qubit>,
}

impl BallScratch {
    pub(crate) fn new(n: usize) -> Self {
        BallScratch {
            depth: vec![u32::MAX; n],
            queue: Vec::new(),
        }
    }
}

/// Unordered, duplicate-free form of [`prune_candidates`] over physical
/// operands.
pub(crate) fn candidates_into(
    operands: &[Qubit],
    g: &CouplingGraph,
    radius: Option<u32>,
    scratch: &mut BallScratch,
    out: &mut Vec<(Qubit, Qubit)>,
) {
    out.clear();
    let Some(radius) = radius else {
        out.extend(g.edges());
        return;
    };
    let limit = radius.saturating_sub(1);
    let BallScratch { depth, queue } = scratch;
    queue.clear();
    for &p in operands {
        if depth[p as usize] == u32::MAX {
            depth[p as usize] = 0;
            queue.push(p);
        }
    }
    let mut head = 0;
    while head < queue.len() {
        let v = queue[head];
        head += 1;
        let d = depth[v as usize];
        if d < limit {
            for &w in g.neighbors(v) {
                if depth[w as usize] == u32::MAX {
                    depth[w as usize] = d + 1;
                    queue.push(w);
                }
            }
        }
    }
    // Inner edges are taken from their lower endpoint only.
    for &v in queue.iter() {
        for &w in g.neighbors(v) {
            if v < w || depth[w as usize] == u32::MAX {
                out.push((v.min(w), v.max(w)));
            }
        }
    }
    for &v in queue.iter() {
        depth[v as usize] = u32::MAX;
    }
}

/// Sabre cost of applying `swap` (a physical edge): the mean front-layer
/// distance plus `weight` times the mean extended-set distance, both taken
/// after the swap, scaled by the larger decay of the two swapped qubits.
pub fn score_swap(
    front: &[(Qubit, Qubit)],
    extended: &[(Qubit, Qubit)],
    g: &CouplingGraph,
    mapping: &Mapping,
    swap: (Qubit, Qubit),
    decay: &[f64],
    weight: f64,
) -> f64 {
    let mut m = mapping.clone();
    m.swap_physical(swap.0, swap.1);
    let mean = |pairs: &[(Qubit, Qubit)]| {
        let sum: u32 = pairs.iter().map(|&(a, b)| g.dist(m.phys(a), m.phys(b))).sum();
        f64::from(sum) / pairs.len() as f64
    };
    let mut h = if front.is_empty() { 0.0 } else { mean(front) };
    if !extended.is_empty() {
        h += weight * mean(extended);
    }
    decay[swap.0 as usize].max(decay[swap.1 as usize]) * h
}
