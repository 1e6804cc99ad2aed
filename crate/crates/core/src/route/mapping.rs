// SPDX-License-Identifier: Apache-2.0

use crate::ir::Qubit;

/// Logical-to-physical assignment over the vertices of a coupling graph.
/// Logical ids past the circuit width are idle placeholders, so both
/// directions are total.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mapping {
    l2p: Vec<Qubit>,
    p2l: Vec<Qubit>,
}

impl Mapping {
    pub fn identity(n: usize) -> Mapping {
        let ids: Vec<Qubit> = (0..n as Qubit).collect();
        Mapping {
            l2p: ids.clone(),
            p2l: ids,
        }
    }

    /// Builds a mapping from its logical-to-physical table. Returns `None`
    /// unless `l2p` is a permutation of `0..l2p.len()`.
    pub fn from_l2p(l2p: Vec<Qubit>) -> Option<Mapping> {
        let mut p2l = vec![Qubit::MAX; l2p.len()];
        for (l, &p) in l2p.iter().enumerate() {
            let slot = p2l.get_mut(p as usize)?;
            if *slot != Qubit::MAX {
                return None;
            }
            *slot = l as Qubit;
        }
        Some(Mapping { l2p, p2l })
    }

    #[inline]
    pub fn phys(&self, logical: Qubit) -> Qubit {
        self.l2p[logical as usize]
    }

    #[inline]
    pub fn logical(&self, physical: Qubit) -> Qubit {
        self.p2l[physical as usize]
    }

    pub fn l2p(&self) -> &[Qubit] {
        &self.l2p
    }

    pub fn p2l(&self) -> &[Qubit] {
        &self.p2l
    }

    pub fn len(&self) -> usize {
        self.l2p.len()
    }

    pub fn is_empty(&self) -> bool {
        self.l2p.is_empty()
    }

    /// Exchanges the logical qubits held by physical qubits `a` and `b`.
    pub fn swap_physical(&mut self, a: Qubit, b: Qubit) {
        let (la, lb) = (self.p2l[a as usize], self.p2l[b as usize]);
        self.p2l.swap(a as usize, b as usize);
        self.l2p[la as usize] = b;
        self.l2p[lb as usize] = a;
        debug_assert!(self.is_bijection());
    }

    pub fn is_bijection(&self) -> bool {
        self.l2p.len() == self.p2l.len()
            && self
                .l2p
                .iter()
                .enumerate()
                .all(|(l, &p)| self.p2l.get(p as usize) == Some(&(l as Qubit)))
    }
}
