// SPDX-License-Identifier: Apache-2.0

use super::{build_full_graph, CouplingGraph, DeviceError, DeviceModel};

/// Picks a connected set of `k` device qubits and returns the coupling graph
/// induced on it.
///
/// Growth starts at the highest-degree qubit of any component large enough
/// to hold `k` qubits and repeatedly adds the frontier qubit with the most
/// neighbors already selected. Ties go to the smallest index. Selected
/// qubits are renumbered `0..k` in ascending physical order.
pub fn select_limited_region(d: &DeviceModel, k: usize) -> Result<CouplingGraph, DeviceError> {
    let n = d.num_qubits;
    if k == 0 || k > n {
        return Err(DeviceError::RegionSize { k, num_qubits: n });
    }
    let full = build_full_graph(d);
    let component = component_sizes(&full);
    let largest = component.iter().map(|&(_, s)| s).max().unwrap_or(0);
    if k == n && full.is_connected() {
        return Ok(full);
    }
    let seed = (0..n as u32)
        .filter(|&v| component[v as usize].1 >= k)
        .max_by(|&a, &b| full.neighbors(a).len().cmp(&full.neighbors(b).len()).then(b.cmp(&a)))
        .ok_or(DeviceError::Fragmented { k, largest })?;

    let mut in_region = vec![false; n];
    // Number of selected neighbors for each unselected vertex; zero means
    // the vertex is not on the frontier.
    let mut links = vec![0u32; n];
    let add = |v: u32, in_region: &mut [bool], links: &mut [u32]| {
        in_region[v as usize] = true;
        for &w in full.neighbors(v) {
            links[w as usize] += 1;
        }
    };
    add(seed, &mut in_region, &mut links);
    for _ in 1..k {
        let next = (0..n as u32)
            .filter(|&v| !in_region[v as usize] && links[v as usize] > 0)
            .max_by(|&a, &b| links[a as usize].cmp(&links[b as usize]).then(b.cmp(&a)))
            .expect("component holds at least k vertices");
        add(next, &mut in_region, &mut links);
    }

    let selected: Vec<u32> = (0..n as u32).filter(|&v| in_region[v as usize]).collect();
    let mut local = vec![u32::MAX; n];
    for (i, &v) in selected.iter().enumerate() {
        local[v as usize] = i as u32;
    }
    let edges: Vec<(u32, u32)> = d
        .edges
        .iter()
        .filter(|&&(a, b)| in_region[a as usize] && in_region[b as usize])
        .map(|&(a, b)| (local[a as usize], local[b as usize]))
        .collect();
    Ok(CouplingGraph::from_edges(selected, &edges))
}

/// `(component id, component size)` per vertex.
fn component_sizes(g: &CouplingGraph) -> Vec<(u32, usize)> {
    let n = g.len();
    let mut comp = vec![u32::MAX; n];
    let mut sizes = Vec::new();
    let mut stack = Vec::new();
    for start in 0..n {
        if comp[start] != u32::MAX {
            continue;
        }
        let id = sizes.len() as u32;
        let mut size = 0;
        comp[start] = id;
        stack.push(start as u32);
        while let Some(v) = stack.pop() {
            size += 1;
            for &w in g.neighbors(v) {
                if comp[w as usize] == u32::MAX {
                    comp[w as usize] = id;
                    stack.push(w);
                }
            }
        }
        sizes.push(size);
    }
    comp.into_iter().map(|c| (c, sizes[c as usize])).collect()
}
