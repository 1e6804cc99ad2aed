// SPDX-License-Identifier: Apache-2.0

use std::ops::Mul;

use num_complex::Complex64;

pub type C64 = Complex64;

pub(crate) const ZERO: C64 = C64::new(0.0, 0.0);
pub(crate) const ONE: C64 = C64::new(1.0, 0.0);

/// Dense square complex matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    dim: usize,
    data: Vec<C64>,
}

impl Matrix {
    pub fn zeros(dim: usize) -> Self {
        Matrix {
            dim,
            data: vec![ZERO; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.data[i * dim + i] = ONE;
        }
        m
    }

    /// Builds a matrix from row-major entries.
    ///
    /// Panics when `entries.len()` is not a perfect square.
    pub fn from_rows(entries: Vec<C64>) -> Self {
        let dim = (entries.len() as f64).sqrt().round() as usize;
        assert_eq!(dim * dim, entries.len(), "matrix data is not square");
        Matrix { dim, data: entries }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> C64 {
        self.data[row * self.dim + col]
    }

    #[inline]
    pub fn set(&mut self, row: usize, col: usize, value: C64) {
        self.data[row * self.dim + col] = value;
    }

    pub fn as_slice(&self) -> &[C64] {
        &self.data
    }

    pub fn real_parts(&self) -> Vec<f64> {
        self.data.iter().map(|z| z.re).collect()
    }

    pub fn imag_parts(&self) -> Vec<f64> {
        self.data.iter().map(|z| z.im).collect()
    }

    pub fn adjoint(&self) -> Matrix {
        let n = self.dim;
        let mut out = Self::zeros(n);
        for r in 0..n {
            for c in 0..n {
                out.data[c * n + r] = self.data[r * n + c].conj();
            }
        }
        out
    }

    pub fn scale(&self, factor: C64) -> Matrix {
        Matrix {
            dim: self.dim,
            data: self.data.iter().map(|z| z * factor).collect(),
        }
    }

    /// Kronecker product `self ⊗ other`.
    pub fn kron(&self, other: &Matrix) -> Matrix {
        let (a, b) = (self.dim, other.dim);
        let n = a * b;
        let mut out = Self::zeros(n);
        for i in 0..a {
            for j in 0..a {
                let s = self.get(i, j);
                if s == ZERO {
                    continue;
                }
                for k in 0..b {
                    for l in 0..b {
                        out.data[(i * b + k) * n + (j * b + l)] = s * other.get(k, l);
                    }
                }
            }
        }
        out
    }

    /// Largest elementwise distance between two equally sized matrices.
    pub fn max_abs_diff(&self, other: &Matrix) -> f64 {
        assert_eq!(self.dim, other.dim);
        self.data
            .iter()
            .zip(&other.data)
            .map(|(x, y)| (x - y).norm())
            .fold(0.0, f64::max)
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        (&self.adjoint() * self).max_abs_diff(&Matrix::identity(self.dim)) <= tol
    }

    /// Applies a `k`-qubit gate matrix to the column vector `state`.
    ///
    /// Bit `q` of a state index is qubit `q`. Inside `gate`, the first entry of
    /// `qubits` is the most significant local bit.
    pub fn apply_to_state(gate: &Matrix, qubits: &[usize], state: &mut [C64]) {
        let k = qubits.len();
        let local = 1usize << k;
        debug_assert_eq!(gate.dim, local);
        // Global bit offsets for each local index.
        let offsets: Vec<usize> = (0..local)
            .map(|l| {
                (0..k)
                    .filter(|j| l >> (k - 1 - j) & 1 == 1)
                    .map(|j| 1usize << qubits[j])
                    .sum()
            })
            .collect();
        let mask: usize = qubits.iter().map(|&q| 1usize << q).sum();
        let mut scratch = vec![ZERO; local];
        for base in 0..state.len() {
            if base & mask != 0 {
                continue;
            }
            for (l, off) in offsets.iter().enumerate() {
                scratch[l] = state[base | off];
            }
            for (r, off) in offsets.iter().enumerate() {
                let row = &gate.data[r * local..(r + 1) * local];
                let mut acc = ZERO;
                for (g, s) in row.iter().zip(&scratch) {
                    acc += g * s;
                }
                state[base | off] = acc;
            }
        }
    }
}

impl Mul for &Matrix {
    type Output = Matrix;

    fn mul(self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        let n = self.dim;
        let mut out = Matrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a == ZERO {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += a * rhs.data[k * n + j];
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> Matrix {
        Matrix::from_rows(vec![ZERO, ONE, ONE, ZERO])
    }

    #[test]
    fn kron_places_first_factor_in_high_bits() {
        let m = x().kron(&Matrix::identity(2));
        // |00> -> |10>
        assert_eq!(m.get(2, 0), ONE);
        assert_eq!(m.get(0, 0), ZERO);
    }

    #[test]
    fn apply_to_state_respects_qubit_order() {
        // X on qubit 1 sends |00> to index 2.
        let mut state = vec![ONE, ZERO, ZERO, ZERO];
        Matrix::apply_to_state(&x(), &[1], &mut state);
        assert_eq!(state[2], ONE);
        // CX with control 0, target 1 on |01> (qubit 0 set) -> |11>.
        let cx = Matrix::from_rows(vec![
            ONE, ZERO, ZERO, ZERO, ZERO, ONE, ZERO, ZERO, ZERO, ZERO, ZERO, ONE, ZERO, ZERO, ONE, ZERO,
        ]);
        let mut state = vec![ZERO, ONE, ZERO, ZERO];
        Matrix::apply_to_state(&cx, &[0, 1], &mut state);
        assert_eq!(state[3], ONE);
    }

    #[test]
    fn identity_is_unitary() {
        assert!(Matrix::identity(8).is_unitary(1e-12));
        assert!(!Matrix::zeros(2).is_unitary(1e-3));
    }
}
