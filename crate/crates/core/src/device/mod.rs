// SPDX-License-Identifier: Apache-2.0

//! Target hardware descriptions and the coupling graphs derived from them.

mod builtin;
mod graph;
mod region;

use serde::Deserialize;
use thiserror::Error;

use crate::ir::GateKind;

pub use builtin::{builtin_device, builtin_names, resolve_device};
pub use graph::{build_full_graph, CouplingGraph};
pub use region::select_limited_region;

#[derive(Debug, Error)]
pub enum DeviceError {
    #[error("invalid device json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("edge [{a}, {b}] out of range for {num_qubits} qubits")]
    EdgeOutOfRange { a: u32, b: u32, num_qubits: usize },
    #[error("self-loop on qubit {0}")]
    SelfLoop(u32),
    #[error("unknown basis gate `{0}`")]
    UnknownBasisGate(String),
    #[error("unknown device `{0}`")]
    UnknownDevice(String),
    #[error("cannot read device file {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("region of {k} qubits requested from a {num_qubits}-qubit device")]
    RegionSize { k: usize, num_qubits: usize },
    #[error("device too fragmented: largest connected component has {largest} qubits, need {k}")]
    Fragmented { k: usize, largest: usize },
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct DeviceJson {
    name: String,
    num_qubits: usize,
    basis_gates: Vec<String>,
    coupling_map: Option<Vec<[u32; 2]>>,
}

/// A device: basis gates plus an undirected coupling edge list.
#[derive(Debug, Clone, PartialEq)]
pub struct DeviceModel {
    pub name: String,
    pub num_qubits: usize,
    pub basis_1q: Vec<GateKind>,
    pub basis_2q: Vec<GateKind>,
    /// Sorted `(min, max)` pairs without duplicates.
    pub edges: Vec<(u32, u32)>,
}

impl DeviceModel {
    /// Builds a device, normalizing and deduplicating `edges`.
    pub fn new(
        name: impl Into<String>,
        num_qubits: usize,
        basis: &[GateKind],
        edges: impl IntoIterator<Item = (u32, u32)>,
    ) -> Result<DeviceModel, DeviceError> {
        let mut list = Vec::new();
        for (a, b) in edges {
            if a as usize >= num_qubits || b as usize >= num_qubits {
                return Err(DeviceError::EdgeOutOfRange { a, b, num_qubits });
            }
            if a == b {
                return Err(DeviceError::SelfLoop(a));
            }
            list.push((a.min(b), a.max(b)));
        }
        list.sort_unstable();
        list.dedup();
        let (basis_2q, basis_1q) = basis.iter().partition(|k| k.num_qubits() == Some(2));
        Ok(DeviceModel {
            name: name.into(),
            num_qubits,
            basis_1q,
            basis_2q,
            edges: list,
        })
    }

    /// Path graph `0 - 1 - ... - (n-1)`.
    pub fn line(n: usize) -> DeviceModel {
        let edges = (1..n as u32).map(|i| (i - 1, i));
        DeviceModel::new(format!("line:{n}"), n, &[], edges).expect("valid line")
    }

    /// Complete graph on `n` vertices.
    pub fn complete(n: usize) -> DeviceModel {
        let n32 = n as u32;
        let edges = (0..n32).flat_map(|a| (a + 1..n32).map(move |b| (a, b)));
        DeviceModel::new(format!("full:{n}"), n, &[], edges).expect("valid complete graph")
    }
}

/// Parses a device description:
/// `{"name", "num_qubits", "basis_gates", "coupling_map"}`.
/// A missing `coupling_map` means all-to-all connectivity.
pub fn load_device(json_text: &str) -> Result<DeviceModel, DeviceError> {
    let raw: DeviceJson = serde_json::from_str(json_text)?;
    let mut basis = Vec::new();
    for name in &raw.basis_gates {
        if matches!(name.as_str(), "measure" | "barrier" | "reset" | "delay") {
            continue;
        }
        let kind = GateKind::from_name(name)
            .filter(|k| !k.is_directive())
            .ok_or_else(|| DeviceError::UnknownBasisGate(name.clone()))?;
        basis.push(kind);
    }
    match raw.coupling_map {
        Some(edges) => DeviceModel::new(raw.name, raw.num_qubits, &basis, edges.into_iter().map(|[a, b]| (a, b))),
        None => {
            let full = DeviceModel::complete(raw.num_qubits);
            DeviceModel::new(raw.name, raw.num_qubits, &basis, full.edges)
        }
    }
}
