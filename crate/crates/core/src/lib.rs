// SPDX-License-Identifier: Apache-2.0

//! A self-contained OpenQASM 2.0 transpiler.
//!
//! The pipeline parses a circuit, expands three- and four-qubit gates,
//! routes it onto a device coupling graph with a Sabre-style router and
//! lowers the result into the native gates of one of the registered
//! backends. A dense unitary oracle is included for verifying small jobs.

pub mod bench;
pub mod dag;
pub mod decompose;
pub mod device;
pub mod generators;
pub mod ir;
pub mod metrics;
pub mod oracle;
pub mod pipeline;
pub mod qasm;
pub mod route;
pub mod simopt;

pub use ir::{Circuit, Gate, GateKind, Matrix, Qubit};
