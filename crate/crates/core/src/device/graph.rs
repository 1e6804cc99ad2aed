// SPDX-License-Identifier: Apache-2.0

use std::collections::VecDeque;

use super::DeviceModel;

/// Adjacency lists plus the all-pairs hop-distance matrix of a set of
/// physical qubits. Vertices are local ids `0..len()`; `physical_ids` maps
/// them back to device qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct CouplingGraph {
    adjacency: Vec<Vec<u32>>,
    dist: Vec<u32>,
    physical_ids: Vec<u32>,
    diameter: u32,
}

impl CouplingGraph {
    /// Builds the graph from local-id edges and fills the distance matrix by
    /// a BFS from every vertex.
    pub fn from_edges(physical_ids: Vec<u32>, edges: &[(u32, u32)]) -> CouplingGraph {
        let n = physical_ids.len();
        let mut adjacency = vec![Vec::new(); n];
        for &(a, b) in edges {
            adjacency[a as usize].push(b);
            adjacency[b as usize].push(a);
        }
        for list in &mut adjacency {
            list.sort_unstable();
            list.dedup();
        }
        let inf = n as u32 + 1;
        let mut dist = vec![inf; n * n];
        let mut queue = VecDeque::with_capacity(n);
        for src in 0..n {
            let row = &mut dist[src * n..(src + 1) * n];
            row[src] = 0;
            queue.push_back(src as u32);
            while let Some(v) = queue.pop_front() {
                let d = row[v as usize] + 1;
                for &w in &adjacency[v as usize] {
                    if row[w as usize] == inf {
                        row[w as usize] = d;
                        queue.push_back(w);
                    }
                }
            }
        }
        let diameter = dist.iter().copied().filter(|&d| d != inf).max().unwrap_or(0);
        CouplingGraph {
            adjacency,
            dist,
            physical_ids,
            diameter,
        }
    }

    pub fn len(&self) -> usize {
        self.physical_ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.physical_ids.is_empty()
    }

    /// Distance reported for vertices in different components.
    pub fn infinity(&self) -> u32 {
        self.len() as u32 + 1
    }

    #[inline]
    pub fn dist(&self, a: u32, b: u32) -> u32 {
        self.dist[a as usize * self.len() + b as usize]
    }

    pub fn dist_row(&self, a: u32) -> &[u32] {
        let n = self.len();
        &self.dist[a as usize * n..(a as usize + 1) * n]
    }

    #[inline]
    pub fn is_edge(&self, a: u32, b: u32) -> bool {
        self.dist(a, b) == 1
    }

    pub fn neighbors(&self, v: u32) -> &[u32] {
        &self.adjacency[v as usize]
    }

    /// Longest finite shortest-path distance.
    pub fn diameter(&self) -> u32 {
        self.diameter
    }

    pub fn physical_ids(&self) -> &[u32] {
        &self.physical_ids
    }

    /// Every edge once, as sorted `(min, max)` pairs in ascending order.
    pub fn edges(&self) -> Vec<(u32, u32)> {
        let mut out = Vec::new();
        for (a, list) in self.adjacency.iter().enumerate() {
            out.extend(list.iter().filter(|&&b| b > a as u32).map(|&b| (a as u32, b)));
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.is_empty() || self.dist_row(0).iter().all(|&d| d != self.infinity())
    }
}

/// Coupling graph over every device qubit.
pub fn build_full_graph(d: &DeviceModel) -> CouplingGraph {
    CouplingGraph::from_edges((0..d.num_qubits as u32).collect(), &d.edges)
}
