// SPDX-License-Identifier: Apache-2.0

//! Sabre-style qubit routing onto a coupling graph.

mod candidates;
mod mapping;
mod sabre;

pub use candidates::{prune_candidates, score_swap};
pub use mapping::Mapping;

use crate::device::CouplingGraph;
use crate::ir::{Circuit, Qubit};

#[derive(Debug, Clone, PartialEq)]
pub struct RouterConfig {
    /// Two-qubit gates beyond the front layer used for lookahead.
    pub extended_set_size: usize,
    pub extended_weight: f64,
    pub decay_increment: f64,
    /// Swaps between decay resets.
    pub decay_reset_interval: usize,
    /// Accepted for reproducibility; the router is deterministic.
    pub seed: u64,
    /// Candidate radius in hops; `None` scores every edge.
    pub prune_radius: Option<u32>,
    /// Emit SWAP as three CX instead of a symbolic `swap`.
    pub expand_swaps: bool,
    /// Forward-and-back sweeps used to pick the initial layout.
    pub layout_rounds: usize,
}

impl Default for RouterConfig {
    fn default() -> Self {
        RouterConfig {
            extended_set_size: 20,
            extended_weight: 0.5,
            decay_increment: 0.001,
            decay_reset_interval: 5,
            seed: 0,
            prune_radius: Some(2),
            expand_swaps: true,
            layout_rounds: 3,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RouteError {
    #[error("circuit needs {needed} qubits but the graph has {available}")]
    TooManyQubits { needed: usize, available: usize },
    #[error("gate `{0}` acts on more than two qubits; decompose it first")]
    WideGate(String),
    #[error("logical qubits {a} and {b} sit in disconnected parts of the graph")]
    Disconnected { a: Qubit, b: Qubit },
    #[error("initial mapping must be a permutation of {0} physical qubits")]
    BadMapping(usize),
}

#[derive(Debug, Clone)]
pub struct RouteOutput {
    /// Routed circuit over graph-local physical qubits.
    pub circuit: Circuit,
    pub initial: Mapping,
    pub final_mapping: Mapping,
    /// Inserted swaps as sorted physical pairs, in order.
    pub swaps: Vec<(Qubit, Qubit)>,
}

fn check(c: &Circuit, g: &CouplingGraph) -> Result<(), RouteError> {
    if c.num_qubits() > g.len() {
        return Err(RouteError::TooManyQubits {
            needed: c.num_qubits(),
            available: g.len(),
        });
    }
    if let Some(gate) = c
        .gates()
        .iter()
        .find(|gate| gate.num_qubits() > 2 && !gate.kind().is_directive())
    {
        return Err(RouteError::WideGate(gate.kind().name().to_string()));
    }
    Ok(())
}

fn reversed(c: &Circuit) -> Circuit {
    let mut r = c.empty_like();
    for gate in c.gates().iter().rev() {
        r.push(gate.clone());
    }
    r
}

/// Layout from a forward sweep followed by a sweep over the reversed
/// circuit; the mapping left by the reverse sweep seeds the real pass.
pub fn initial_mapping(c: &Circuit, g: &CouplingGraph, cfg: &RouterConfig) -> Result<Mapping, RouteError> {
    check(c, g)?;
    let rev = reversed(c);
    let mut m = Mapping::identity(g.len());
    for _ in 0..cfg.layout_rounds.max(1) {
        m = sabre::run_pass(c, g, cfg, m, false)?.final_mapping;
        m = sabre::run_pass(&rev, g, cfg, m, false)?.final_mapping;
    }
    Ok(m)
}

pub fn route(c: &Circuit, g: &CouplingGraph, cfg: &RouterConfig) -> Result<RouteOutput, RouteError> {
    let initial = initial_mapping(c, g, cfg)?;
    route_with_mapping(c, g, cfg, initial)
}

/// Routes from a fixed layout over all `g.len()` physical qubits.
pub fn route_with_mapping(
    c: &Circuit,
    g: &CouplingGraph,
    cfg: &RouterConfig,
    initial: Mapping,
) -> Result<RouteOutput, RouteError> {
    check(c, g)?;
    if initial.len() != g.len() {
        return Err(RouteError::BadMapping(g.len()));
    }
    let pass = sabre::run_pass(c, g, cfg, initial.clone(), true)?;
    Ok(RouteOutput {
        circuit: pass.circuit.expect("emitting pass returns a circuit"),
        initial,
        final_mapping: pass.final_mapping,
        swaps: pass.swaps,
    })
}

/// Whether every two-qubit gate of `c` lies on an edge of `g`.
pub fn is_routed(c: &Circuit, g: &CouplingGraph) -> bool {
    c.gates()
        .iter()
        .filter(|gate| gate.is_two_qubit())
        .all(|gate| g.is_edge(gate.qubits()[0], gate.qubits()[1]))
}
