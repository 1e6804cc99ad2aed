// SPDX-License-Identifier: Apache-2.0

use std::collections::VecDeque;

use smallvec::SmallVec;

use super::candidates::{candidates_into, BallScratch};
use super::{Mapping, RouteError, RouterConfig};
use crate::dag::{build_dag, CircuitDag};
use crate::device::CouplingGraph;
use crate::ir::{Circuit, Gate, GateKind, Qubit};

const NONE: u32 = u32::MAX;
const SCORE_EPS: f64 = 1e-12;

pub(crate) struct PassOutput {
    pub circuit: Option<Circuit>,
    pub final_mapping: Mapping,
    pub swaps: Vec<(Qubit, Qubit)>,
}

/// One routing sweep over `c` starting from `start`.
pub(crate) fn run_pass(
    c: &Circuit,
    g: &CouplingGraph,
    cfg: &RouterConfig,
    start: Mapping,
    emit: bool,
) -> Result<PassOutput, RouteError> {
    let n = g.len();
    let mut s = Sabre {
        c,
        g,
        cfg,
        dag: build_dag(c),
        map: start,
        decay: vec![1.0; n],
        swaps_since_reset: 0,
        out: emit.then(|| Circuit::with_capacity(n, c.num_clbits(), c.len() + c.len() / 2)),
        swaps: Vec::new(),
        front_partner: vec![NONE; n],
        front_gate: vec![NONE; n],
        front_pairs: Vec::new(),
        ext_partners: vec![SmallVec::new(); n],
        ext_pairs: Vec::new(),
        stamp: vec![0; c.len()],
        generation: 0,
        scratch: BallScratch::new(n),
        cands: Vec::new(),
        operands: Vec::new(),
        all_edges: g.edges(),
    };
    s.run()?;
    Ok(PassOutput {
        circuit: s.out,
        final_mapping: s.map,
        swaps: s.swaps,
    })
}

struct Sabre<'a> {
    c: &'a Circuit,
    g: &'a CouplingGraph,
    cfg: &'a RouterConfig,
    dag: CircuitDag,
    map: Mapping,
    decay: Vec<f64>,
    swaps_since_reset: usize,
    out: Option<Circuit>,
    swaps: Vec<(Qubit, Qubit)>,
    /// Partner of each logical qubit in its blocked front gate.
    front_partner: Vec<u32>,
    /// Blocked front gate id on each logical qubit.
    front_gate: Vec<u32>,
    front_pairs: Vec<(Qubit, Qubit)>,
    /// Partners of each logical qubit across the extended set.
    ext_partners: Vec<SmallVec<[u32; 4]>>,
    ext_pairs: Vec<(Qubit, Qubit)>,
    stamp: Vec<u32>,
    generation: u32,
    scratch: BallScratch,
    cands: Vec<(Qubit, Qubit)>,
    operands: Vec<Qubit>,
    all_edges: Vec<(Qubit, Qubit)>,
}

impl Sabre<'_> {
    fn run(&mut self) -> Result<(), RouteError> {
        let mut work: VecDeque<u32> = self.dag.front().collect();
        self.execute(&mut work)?;
        let stall_limit = 3 * self.g.diameter().max(1) as usize;
        while !self.dag.is_done() {
            self.rebuild_layers();
            let mut best_sum = self.front_sum();
            let mut stall = 0;
            loop {
                if stall >= stall_limit {
                    self.force_oldest(&mut work)?;
                    break;
                }
                let (a, b) = self.choose_swap();
                self.apply_swap(a, b);
                for p in [a, b] {
                    let id = self.front_gate[self.map.logical(p) as usize];
                    if id != NONE && !work.contains(&id) {
                        work.push_back(id);
                    }
                }
                if self.execute(&mut work)? {
                    break;
                }
                let sum = self.front_sum();
                if sum < best_sum {
                    best_sum = sum;
                    stall = 0;
                } else {
                    stall += 1;
                }
            }
        }
        Ok(())
    }

    /// Runs every gate in `work` that can execute, following released gates.
    /// Returns whether anything ran.
    fn execute(&mut self, work: &mut VecDeque<u32>) -> Result<bool, RouteError> {
        let mut ran = false;
        while let Some(id) = work.pop_front() {
            let gate = &self.c.gates()[id as usize];
            if gate.kind() != GateKind::Barrier && gate.num_qubits() == 2 {
                let (a, b) = (gate.qubits()[0], gate.qubits()[1]);
                let d = self.g.dist(self.map.phys(a), self.map.phys(b));
                if d >= self.g.infinity() {
                    return Err(RouteError::Disconnected { a, b });
                }
                if d != 1 {
                    self.front_gate[a as usize] = id;
                    self.front_gate[b as usize] = id;
                    continue;
                }
                self.front_gate[a as usize] = NONE;
                self.front_gate[b as usize] = NONE;
            }
            if let Some(out) = &mut self.out {
                let map = &self.map;
                out.push(gate.remapped(|q| map.phys(q)));
            }
            let freed = self.dag.pop_and_advance(id).expect("worklist holds front gates");
            work.extend(freed);
            ran = true;
        }
        if ran {
            self.decay.fill(1.0);
            self.swaps_since_reset = 0;
        }
        Ok(ran)
    }

    /// Recomputes the blocked front pairs and the lookahead set.
    fn rebuild_layers(&mut self) {
        for &(a, b) in &self.front_pairs {
            self.front_partner[a as usize] = NONE;
            self.front_partner[b as usize] = NONE;
        }
        for &(a, b) in &self.ext_pairs {
            self.ext_partners[a as usize].clear();
            self.ext_partners[b as usize].clear();
        }
        self.front_pairs.clear();
        self.ext_pairs.clear();
        self.generation += 1;
        let gen = self.generation;
        let mut queue: VecDeque<u32> = VecDeque::new();
        for id in self.dag.front() {
            let q = self.c.gates()[id as usize].qubits();
            self.front_pairs.push((q[0], q[1]));
            self.front_partner[q[0] as usize] = q[1];
            self.front_partner[q[1] as usize] = q[0];
            self.stamp[id as usize] = gen;
            queue.push_back(id);
        }
        let limit = self.cfg.extended_set_size;
        // Bound the walk so long one-qubit chains do not make each rebuild O(G).
        let mut budget = 16 * limit.max(1) + self.front_pairs.len();
        while let Some(id) = queue.pop_front() {
            if self.ext_pairs.len() >= limit || budget == 0 {
                break;
            }
            for &s in self.dag.successors(id) {
                if self.stamp[s as usize] == gen {
                    continue;
                }
                self.stamp[s as usize] = gen;
                budget = budget.saturating_sub(1);
                let gate = &self.c.gates()[s as usize];
                if gate.is_two_qubit() && self.ext_pairs.len() < limit {
                    let (a, b) = (gate.qubits()[0], gate.qubits()[1]);
                    self.ext_pairs.push((a, b));
                    self.ext_partners[a as usize].push(b);
                    self.ext_partners[b as usize].push(a);
                }
                queue.push_back(s);
            }
        }
    }

    fn front_sum(&self) -> u64 {
        self.front_pairs
            .iter()
            .map(|&(a, b)| u64::from(self.g.dist(self.map.phys(a), self.map.phys(b))))
            .sum()
    }

    fn ext_sum(&self) -> u64 {
        self.ext_pairs
            .iter()
            .map(|&(a, b)| u64::from(self.g.dist(self.map.phys(a), self.map.phys(b))))
            .sum()
    }

    /// Change in summed distance over `partners` of the logical qubit at
    /// `from` when it moves to `to`. The swap partner is skipped because
    /// their mutual distance does not change.
    fn delta(&self, partners: &[u32], from: Qubit, to: Qubit, other: Qubit) -> i64 {
        let (row_from, row_to) = (self.g.dist_row(from), self.g.dist_row(to));
        partners
            .iter()
            .filter(|&&p| p != other)
            .map(|&p| {
                let pp = self.map.phys(p) as usize;
                i64::from(row_to[pp]) - i64::from(row_from[pp])
            })
            .sum()
    }

    fn score(&self, a: Qubit, b: Qubit, front_sum: u64, ext_sum: u64) -> f64 {
        let (la, lb) = (self.map.logical(a), self.map.logical(b));
        let mut df = 0i64;
        for (l, from, to, other) in [(la, a, b, lb), (lb, b, a, la)] {
            let p = self.front_partner[l as usize];
            if p != NONE {
                df += self.delta(&[p], from, to, other);
            }
        }
        let mut h = (front_sum as i64 + df) as f64 / self.front_pairs.len() as f64;
        if !self.ext_pairs.is_empty() {
            let de = self.delta(&self.ext_partners[la as usize], a, b, lb)
                + self.delta(&self.ext_partners[lb as usize], b, a, la);
            h += self.cfg.extended_weight * (ext_sum as i64 + de) as f64 / self.ext_pairs.len() as f64;
        }
        self.decay[a as usize].max(self.decay[b as usize]) * h
    }

    fn choose_swap(&mut self) -> (Qubit, Qubit) {
        let (fs, es) = (self.front_sum(), self.ext_sum());
        let mut cands = std::mem::take(&mut self.cands);
        match self.cfg.prune_radius {
            None => {
                cands.clear();
                cands.extend_from_slice(&self.all_edges);
            }
            radius => {
                self.operands.clear();
                for &(a, b) in &self.front_pairs {
                    self.operands.push(self.map.phys(a));
                    self.operands.push(self.map.phys(b));
                }
                candidates_into(&self.operands, self.g, radius, &mut self.scratch, &mut cands);
            }
        }
        // Ties go to the smallest edge, so the result does not depend on
        // candidate order.
        let mut best = (f64::INFINITY, (u32::MAX, u32::MAX));
        for &edge in &cands {
            let s = self.score(edge.0, edge.1, fs, es);
            if s < best.0 - SCORE_EPS || (s <= best.0 + SCORE_EPS && edge < best.1) {
                best = (s, edge);
            }
        }
        self.cands = cands;
        best.1
    }

    fn apply_swap(&mut self, a: Qubit, b: Qubit) {
        if let Some(out) = &mut self.out {
            if self.cfg.expand_swaps {
                out.push(Gate::raw(GateKind::CX, &[a, b], &[]));
                out.push(Gate::raw(GateKind::CX, &[b, a], &[]));
                out.push(Gate::raw(GateKind::CX, &[a, b], &[]));
            } else {
                out.push(Gate::raw(GateKind::Swap, &[a, b], &[]));
            }
        }
        self.swaps.push((a.min(b), a.max(b)));
        self.map.swap_physical(a, b);
        self.decay[a as usize] += self.cfg.decay_increment;
        self.decay[b as usize] += self.cfg.decay_increment;
        self.swaps_since_reset += 1;
        if self.swaps_since_reset >= self.cfg.decay_reset_interval {
            self.decay.fill(1.0);
            self.swaps_since_reset = 0;
        }
    }

    /// Walks the first operand of the oldest blocked gate along a shortest
    /// path until the gate can run.
    fn force_oldest(&mut self, work: &mut VecDeque<u32>) -> Result<(), RouteError> {
        let id = self.dag.front().next().expect("blocked front is non-empty");
        let q = self.c.gates()[id as usize].qubits();
        let (la, lb) = (q[0], q[1]);
        loop {
            let (pa, pb) = (self.map.phys(la), self.map.phys(lb));
            if self.g.dist(pa, pb) <= 1 {
                break;
            }
            let step = *self
                .g
                .neighbors(pa)
                .iter()
                .find(|&&w| self.g.dist(w, pb) < self.g.dist(pa, pb))
                .expect("connected pair has a shortest path");
            self.apply_swap(pa, step);
        }
        let ids: Vec<u32> = self.dag.front().collect();
        work.extend(ids);
        self.execute(work)?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::device::{build_full_graph, DeviceModel};
    use crate::route::score_swap;
    use proptest::prelude::*;

    fn random_circuit(n: u32, len: usize) -> impl Strategy<Value = Circuit> {
        proptest::collection::vec((0..n, 1..n), len).prop_map(move |pairs| {
            let mut c = Circuit::new(n as usize, 0);
            for (a, d) in pairs {
                c.append(Gate::new(GateKind::CX, &[a, (a + d) % n], &[]).unwrap())
                    .unwrap();
            }
            c
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]

        #[test]
        fn incremental_scores_match_direct_formula(c in random_circuit(6, 30), swaps in proptest::collection::vec(0usize..5, 0..4)) {
            let g = build_full_graph(&DeviceModel::line(6));
            let cfg = RouterConfig::default();
            let mut s = Sabre {
                c: &c,
                g: &g,
                cfg: &cfg,
                dag: build_dag(&c),
                map: Mapping::identity(6),
                decay: vec![1.0; 6],
                swaps_since_reset: 0,
                out: None,
                swaps: Vec::new(),
                front_partner: vec![NONE; 6],
                front_gate: vec![NONE; 6],
                front_pairs: Vec::new(),
                ext_partners: vec![SmallVec::new(); 6],
                ext_pairs: Vec::new(),
                stamp: vec![0; c.len()],
                generation: 0,
                scratch: BallScratch::new(6),
                cands: Vec::new(),
                operands: Vec::new(),
                all_edges: g.edges(),
            };
            let mut work: VecDeque<u32> = s.dag.front().collect();
            s.execute(&mut work).unwrap();
            prop_assume!(!s.dag.is_done());
            for i in swaps {
                s.apply_swap(i as u32, i as u32 + 1);
            }
            s.rebuild_layers();
            let (fs, es) = (s.front_sum(), s.ext_sum());
            for (a, b) in g.edges() {
                let fast = s.score(a, b, fs, es);
                let slow = score_swap(&s.front_pairs, &s.ext_pairs, &g, &s.map, (a, b), &s.decay, cfg.extended_weight);
                prop_assert!((fast - slow).abs() < 1e-12, "{} vs {}", fast, slow);
            }
        }
    }
}
