// SPDX-License-Identifier: Apache-2.0

use std::fmt;

/// Every operation the IR can carry.
///
/// Covers the qelib1 gate library, the native gates of the supported
/// backends (`sx`, `gpi`, `gpi2`, `gz`, `ms`, `zz`), and the two pseudo
/// operations `measure` and `barrier`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GateKind {
    U3,
    U2,
    U1,
    CX,
    Id,
    X,
    Y,
    Z,
    H,
    S,
    Sdg,
    T,
    Tdg,
    RX,
    RY,
    RZ,
    SX,
    SXdg,
    CZ,
    CY,
    Swap,
    CH,
    CCX,
    CSwap,
    CRX,
    CRY,
    CRZ,
    CU1,
    CU3,
    RXX,
    RZZ,
    RCCX,
    RC3X,
    C3X,
    C3SqrtX,
    C4X,
    GPI,
    GPI2,
    GZ,
    MS,
    ZZ,
    Measure,
    Barrier,
}

impl GateKind {
    pub const ALL: [GateKind; 43] = [
        GateKind::U3,
        GateKind::U2,
        GateKind::U1,
        GateKind::CX,
        GateKind::Id,
        GateKind::X,
        GateKind::Y,
        GateKind::Z,
        GateKind::H,
        GateKind::S,
        GateKind::Sdg,
        GateKind::T,
        GateKind::Tdg,
        GateKind::RX,
        GateKind::RY,
        GateKind::RZ,
        GateKind::SX,
        GateKind::SXdg,
        GateKind::CZ,
        GateKind::CY,
        GateKind::Swap,
        GateKind::CH,
        GateKind::CCX,
        GateKind::CSwap,
        GateKind::CRX,
        GateKind::CRY,
        GateKind::CRZ,
        GateKind::CU1,
        GateKind::CU3,
        GateKind::RXX,
        GateKind::RZZ,
        GateKind::RCCX,
        GateKind::RC3X,
        GateKind::C3X,
        GateKind::C3SqrtX,
        GateKind::C4X,
        GateKind::GPI,
        GateKind::GPI2,
        GateKind::GZ,
        GateKind::MS,
        GateKind::ZZ,
        GateKind::Measure,
        GateKind::Barrier,
    ];

    /// Lower-case OpenQASM spelling.
    pub fn name(self) -> &'static str {
        use GateKind::*;
        match self {
            U3 => "u3",
            U2 => "u2",
            U1 => "u1",
            CX => "cx",
            Id => "id",
            X => "x",
            Y => "y",
            Z => "z",
            H => "h",
            S => "s",
            Sdg => "sdg",
            T => "t",
            Tdg => "tdg",
            RX => "rx",
            RY => "ry",
            RZ => "rz",
            SX => "sx",
            SXdg => "sxdg",
            CZ => "cz",
            CY => "cy",
            Swap => "swap",
            CH => "ch",
            CCX => "ccx",
            CSwap => "cswap",
            CRX => "crx",
            CRY => "cry",
            CRZ => "crz",
            CU1 => "cu1",
            CU3 => "cu3",
            RXX => "rxx",
            RZZ => "rzz",
            RCCX => "rccx",
            RC3X => "rc3x",
            C3X => "c3x",
            C3SqrtX => "c3sqrtx",
            C4X => "c4x",
            GPI => "gpi",
            GPI2 => "gpi2",
            GZ => "gz",
            MS => "ms",
            ZZ => "zz",
            Measure => "measure",
            Barrier => "barrier",
        }
    }

    /// Resolves a gate name, including the `U`/`CX` built-ins and the
    /// common `p`/`u`/`cp` aliases.
    pub fn from_name(name: &str) -> Option<GateKind> {
        use GateKind::*;
        let kind = match name {
            "U" | "u" | "u3" => U3,
            "u2" => U2,
            "u1" | "p" => U1,
            "CX" | "cx" | "cnot" => CX,
            "id" => Id,
            "cp" | "cu1" => CU1,
            "c3sqrtx" | "c3xsqrtx" => C3SqrtX,
            other => return GateKind::ALL.iter().copied().find(|k| k.name() == other),
        };
        Some(kind)
    }

    /// Number of qubits the gate acts on; `None` for the variadic barrier.
    pub fn num_qubits(self) -> Option<usize> {
        use GateKind::*;
        let n = match self {
            Barrier => return None,
            U3 | U2 | U1 | Id | X | Y | Z | H | S | Sdg | T | Tdg | RX | RY | RZ | SX | SXdg | GPI | GPI2 | GZ
            | Measure => 1,
            CX | CZ | CY | Swap | CH | CRX | CRY | CRZ | CU1 | CU3 | RXX | RZZ | MS | ZZ => 2,
            CCX | CSwap | RCCX => 3,
            RC3X | C3X | C3SqrtX => 4,
            C4X => 5,
        };
        Some(n)
    }

    pub fn num_params(self) -> usize {
        use GateKind::*;
        match self {
            U3 | CU3 => 3,
            U2 | MS => 2,
            U1 | RX | RY | RZ | CRX | CRY | CRZ | CU1 | RXX | RZZ | GPI | GPI2 | GZ | ZZ => 1,
            _ => 0,
        }
    }

    /// Pseudo operations carry no unitary.
    pub fn is_directive(self) -> bool {
        matches!(self, GateKind::Measure | GateKind::Barrier)
    }

    /// Gates defined in terms of other library gates.
    pub fn is_composite(self) -> bool {
        use GateKind::*;
        matches!(
            self,
            CZ | CY
                | Swap
                | CH
                | CCX
                | CSwap
                | CRX
                | CRY
                | CRZ
                | CU1
                | CU3
                | RXX
                | RZZ
                | RCCX
                | RC3X
                | C3X
                | C3SqrtX
                | C4X
        )
    }

    /// Part of the stock qelib1 library (as opposed to a backend-native extension).
    pub fn in_qelib1(self) -> bool {
        !matches!(
            self,
            GateKind::GPI | GateKind::GPI2 | GateKind::GZ | GateKind::MS | GateKind::ZZ
        )
    }
}

impl fmt::Display for GateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for kind in GateKind::ALL {
            assert_eq!(GateKind::from_name(kind.name()), Some(kind), "{kind}");
        }
        assert_eq!(GateKind::from_name("U"), Some(GateKind::U3));
        assert_eq!(GateKind::from_name("CX"), Some(GateKind::CX));
        assert_eq!(GateKind::from_name("nope"), None);
    }

    #[test]
    fn composite_count_matches_library() {
        let composites = GateKind::ALL.iter().filter(|k| k.is_composite()).count();
        assert_eq!(composites, 18);
    }
}
