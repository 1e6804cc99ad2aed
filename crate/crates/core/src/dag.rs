// SPDX-License-Identifier: Apache-2.0

//! Gate dependency graph with an incrementally maintained front layer.
//!
//! Each gate depends on the previous gate on every qubit it touches.
//! Executing a front gate only visits that gate's successors, so draining
//! the whole graph costs O(G + E).

use smallvec::SmallVec;
use thiserror::Error;

use crate::ir::Circuit;

const NIL: u32 = u32::MAX;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DagError {
    #[error("node {0} is not in the front layer")]
    NotInFront(u32),
}

#[derive(Debug, Clone)]
pub struct CircuitDag {
    succ: Vec<SmallVec<[u32; 2]>>,
    pending: Vec<u32>,
    // Front layer as an intrusive doubly linked list in insertion order.
    prev: Vec<u32>,
    next: Vec<u32>,
    in_front: Vec<bool>,
    head: u32,
    tail: u32,
    front_len: usize,
    remaining: usize,
    num_edges: usize,
    edge_visits: u64,
}

/// Builds the dependency graph of `c`, one node per gate in circuit order.
pub fn build_dag(c: &Circuit) -> CircuitDag {
    let g = c.len();
    let mut succ: Vec<SmallVec<[u32; 2]>> = vec![SmallVec::new(); g];
    let mut pending = vec![0u32; g];
    let mut last = vec![NIL; c.num_qubits()];
    let mut num_edges = 0;
    for (id, gate) in c.gates().iter().enumerate() {
        let id = id as u32;
        for &q in gate.qubits() {
            let p = last[q as usize];
            // A 2q gate following another 2q gate on the same pair gets one edge.
            if p != NIL && succ[p as usize].last() != Some(&id) {
                succ[p as usize].push(id);
                pending[id as usize] += 1;
                num_edges += 1;
            }
            last[q as usize] = id;
        }
    }
    let mut dag = CircuitDag {
        succ,
        pending,
        prev: vec![NIL; g],
        next: vec![NIL; g],
        in_front: vec![false; g],
        head: NIL,
        tail: NIL,
        front_len: 0,
        remaining: g,
        num_edges,
        edge_visits: 0,
    };
    for id in 0..g as u32 {
        if dag.pending[id as usize] == 0 {
            dag.push_front(id);
        }
    }
    dag
}

impl CircuitDag {
    fn push_front(&mut self, id: u32) {
        self.in_front[id as usize] = true;
        self.prev[id as usize] = self.tail;
        self.next[id as usize] = NIL;
        if self.tail == NIL {
            self.head = id;
        } else {
            self.next[self.tail as usize] = id;
        }
        self.tail = id;
        self.front_len += 1;
    }

    fn unlink(&mut self, id: u32) {
        let (p, n) = (self.prev[id as usize], self.next[id as usize]);
        if p == NIL {
            self.head = n;
        } else {
            self.next[p as usize] = n;
        }
        if n == NIL {
            self.tail = p;
        } else {
            self.prev[n as usize] = p;
        }
        self.in_front[id as usize] = false;
        self.front_len -= 1;
    }

    /// Front-layer node ids in the order they became executable.
    pub fn front(&self) -> FrontIter<'_> {
        FrontIter {
            dag: self,
            cur: self.head,
        }
    }

    pub fn front_len(&self) -> usize {
        self.front_len
    }

    pub fn is_front(&self, id: u32) -> bool {
        self.in_front.get(id as usize).copied().unwrap_or(false)
    }

    /// Marks a front node executed and returns the nodes it released, which
    /// are appended to the front layer.
    pub fn pop_and_advance(&mut self, id: u32) -> Result<SmallVec<[u32; 2]>, DagError> {
        if !self.is_front(id) {
            return Err(DagError::NotInFront(id));
        }
        self.unlink(id);
        self.remaining -= 1;
        let mut freed = SmallVec::new();
        for i in 0..self.succ[id as usize].len() {
            let s = self.succ[id as usize][i];
            self.edge_visits += 1;
            let p = &mut self.pending[s as usize];
            *p -= 1;
            if *p == 0 {
                freed.push(s);
                self.push_front(s);
            }
        }
        Ok(freed)
    }

    pub fn successors(&self, id: u32) -> &[u32] {
        &self.succ[id as usize]
    }

    /// Nodes not yet executed (front included).
    pub fn remaining(&self) -> usize {
        self.remaining
    }

    pub fn is_done(&self) -> bool {
        self.remaining == 0
    }

    pub fn len(&self) -> usize {
        self.succ.len()
    }

    pub fn is_empty(&self) -> bool {
        self.succ.is_empty()
    }

    pub fn num_edges(&self) -> usize {
        self.num_edges
    }

    /// Successor edges traversed by `pop_and_advance` so far.
    pub fn edge_visits(&self) -> u64 {
        self.edge_visits
    }
}

pub struct FrontIter<'a> {
    dag: &'a CircuitDag,
    cur: u32,
}

impl Iterator for FrontIter<'_> {
    type Item = u32;

    fn next(&mut self) -> Option<u32> {
        if self.cur == NIL {
            return None;
        }
        let id = self.cur;
        self.cur = self.dag.next[id as usize];
        Some(id)
    }
}
