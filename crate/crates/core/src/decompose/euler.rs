// SPDX-License-Identifier: Apache-2.0

use std::f64::consts::{PI, TAU};

use crate::ir::Matrix;

/// `U3(theta, phi, lambda)` angles of a one-qubit unitary, up to global phase.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Euler {
    pub theta: f64,
    pub phi: f64,
    pub lambda: f64,
}

/// Angles below this are treated as exact special cases.
pub(crate) const ANGLE_EPS: f64 = 1e-11;

/// Maps an angle into `(-pi, pi]`.
pub fn normalize_angle(a: f64) -> f64 {
    let mut r = a % TAU;
    if r > PI {
        r -= TAU;
    } else if r <= -PI {
        r += TAU;
    }
    r
}

/// True when `a` is a multiple of `2*pi` within tolerance.
pub(crate) fn is_zero_angle(a: f64) -> bool {
    normalize_angle(a).abs() < ANGLE_EPS
}

/// ZYZ decomposition: `m = e^{ia} Rz(phi) Ry(theta) Rz(lambda)`.
pub fn zyz(m: &Matrix) -> Euler {
    debug_assert_eq!(m.dim(), 2);
    let det = m.get(0, 0) * m.get(1, 1) - m.get(0, 1) * m.get(1, 0);
    let inv_phase = det.sqrt().inv();
    let (a, c, d) = (
        m.get(0, 0) * inv_phase,
        m.get(1, 0) * inv_phase,
        m.get(1, 1) * inv_phase,
    );
    let theta = 2.0 * c.norm().atan2(a.norm());
    // For SU(2): d = e^{i(phi+lambda)/2} cos, c = e^{i(phi-lambda)/2} sin.
    let sum = if d.norm() > ANGLE_EPS { 2.0 * d.arg() } else { 0.0 };
    let diff = if c.norm() > ANGLE_EPS { 2.0 * c.arg() } else { 0.0 };
    Euler {
        theta,
        phi: normalize_angle((sum + diff) / 2.0),
        lambda: normalize_angle((sum - diff) / 2.0),
    }
}
