// SPDX-License-Identifier: Apache-2.0

//! The full transpile job: parse, configure, route, decompose, emit.

use std::time::{Duration, Instant};

use serde::Serialize;
use thiserror::Error;

use crate::decompose::{backend, decompose_3q, fold_1q_runs, lower_circuit, DecomposeError};
use crate::device::{build_full_graph, select_limited_region, DeviceError, DeviceModel};
use crate::ir::{Circuit, Qubit};
use crate::oracle::{circuit_unitary, equivalent_up_to_phase_and_perm, OracleError, MAX_QUBITS};
use crate::qasm::{emit_qasm, parse, QasmError};
use crate::route::{route, Mapping, RouteError, RouterConfig};
use crate::simopt::{priority_permutation, PriorityError, QubitPriority};

#[derive(Debug, Error)]
pub enum TranspileError {
    #[error("parse error: {0}")]
    Parse(QasmError),
    #[error("device error: {0}")]
    Device(#[from] DeviceError),
    #[error("routing error: {0}")]
    Route(#[from] RouteError),
    #[error("decompose error: {0}")]
    Decompose(#[from] DecomposeError),
    #[error("priority error: {0}")]
    Priority(#[from] PriorityError),
    #[error("emit error: {0}")]
    Emit(QasmError),
}

#[derive(Debug, Clone)]
pub struct TranspileOptions {
    pub backend: String,
    pub router: RouterConfig,
    /// Route inside a region the size of the circuit.
    pub constrained: bool,
    pub priority: Option<QubitPriority>,
}

impl TranspileOptions {
    pub fn new(backend: &str) -> Self {
        TranspileOptions {
            backend: backend.to_owned(),
            router: RouterConfig::default(),
            constrained: false,
            priority: None,
        }
    }
}

/// Wall time per stage. `decompose` covers both the wide-gate expansion
/// before routing and the basis translation after it.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize)]
pub struct StageTimings {
    pub parse: Duration,
    pub configure: Duration,
    pub route: Duration,
    pub decompose: Duration,
    pub emit: Duration,
}

impl StageTimings {
    pub fn total(&self) -> Duration {
        self.parse + self.configure + self.route + self.decompose + self.emit
    }
}

#[derive(Debug, Clone)]
pub struct Transpiled {
    /// Output over `physical_ids.len()` qubits.
    pub circuit: Circuit,
    /// Logical qubit to output index before the first gate.
    pub initial: Vec<Qubit>,
    /// Logical qubit to output index after the last gate.
    pub final_layout: Vec<Qubit>,
    /// Output index to device qubit.
    pub physical_ids: Vec<u32>,
    pub swaps: usize,
    pub timings: StageTimings,
}

/// Runs every stage after parsing on an in-memory circuit.
pub fn transpile(c: &Circuit, d: &DeviceModel, opts: &TranspileOptions) -> Result<Transpiled, TranspileError> {
    let mut timings = StageTimings::default();

    let t = Instant::now();
    let b = backend(&opts.backend)?;
    let graph = if opts.constrained {
        select_limited_region(d, c.num_qubits().max(1))?
    } else {
        build_full_graph(d)
    };
    let cfg = RouterConfig {
        expand_swaps: b.cx_native(),
        ..opts.router.clone()
    };
    timings.configure = t.elapsed();

    let t = Instant::now();
    let narrow = decompose_3q(c)?;
    timings.decompose = t.elapsed();

    let t = Instant::now();
    let routed = route(&narrow, &graph, &cfg)?;
    timings.route = t.elapsed();

    let t = Instant::now();
    let mut out = fold_1q_runs(&lower_circuit(&routed.circuit, b)?);
    timings.decompose += t.elapsed();

    let layout = |m: &Mapping| m.l2p().to_vec();
    let (mut initial, mut final_layout) = (layout(&routed.initial), layout(&routed.final_mapping));
    let mut physical_ids = graph.physical_ids().to_vec();
    if let Some(prio) = &opts.priority {
        let perm = priority_permutation(&out, prio)?;
        out = out.relabeled(&perm, out.num_qubits());
        for p in initial.iter_mut().chain(final_layout.iter_mut()) {
            *p = perm[*p as usize];
        }
        let mut ids = vec![0; physical_ids.len()];
        for (old, &new) in perm.iter().enumerate() {
            ids[new as usize] = physical_ids[old];
        }
        physical_ids = ids;
    }
    Ok(Transpiled {
        circuit: out,
        initial,
        final_layout,
        physical_ids,
        swaps: routed.swaps.len(),
        timings,
    })
}

/// Parses `source`, transpiles it and emits QASM text.
pub fn transpile_source(
    source: &str,
    d: &DeviceModel,
    opts: &TranspileOptions,
) -> Result<(Circuit, Transpiled, String), TranspileError> {
    let t = Instant::now();
    let input = parse(source).map_err(TranspileError::Parse)?;
    let parse_time = t.elapsed();
    let mut job = transpile(&input, d, opts)?;
    job.timings.parse = parse_time;
    let t = Instant::now();
    let text = emit_qasm(&job.circuit).map_err(TranspileError::Emit)?;
    job.timings.emit = t.elapsed();
    Ok((input, job, text))
}

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error("job touches {0} qubits; verification supports at most {MAX_QUBITS}")]
    TooWide(usize),
    #[error(transparent)]
    Oracle(#[from] OracleError),
}

/// Checks that `job.circuit` implements `input` up to global phase, given
/// the initial and final layouts. Only output qubits that a gate or a
/// logical qubit touches are simulated.
pub fn verify_transpiled(input: &Circuit, job: &Transpiled, tol: f64) -> Result<bool, VerifyError> {
    let m = job.physical_ids.len();
    let mut touched = vec![false; m];
    for g in job.circuit.gates().iter().filter(|g| !g.kind().is_directive()) {
        for &q in g.qubits() {
            touched[q as usize] = true;
        }
    }
    for l in 0..input.num_qubits() {
        touched[job.initial[l] as usize] = true;
        touched[job.final_layout[l] as usize] = true;
    }
    let mut local = vec![u32::MAX; m];
    let mut k = 0u32;
    for (q, &t) in touched.iter().enumerate() {
        if t {
            local[q] = k;
            k += 1;
        }
    }
    let k = k as usize;
    if k > MAX_QUBITS {
        return Err(VerifyError::TooWide(k));
    }
    let out = job.circuit.relabeled(&local, k);
    let into: Vec<Qubit> = (0..input.num_qubits())
        .map(|l| local[job.initial[l] as usize])
        .collect();
    let expected = input.relabeled(&into, k);
    // Untouched qubits never move, so the routing permutation closes on
    // the touched set.
    let mut sigma: Vec<usize> = (0..k).collect();
    for l in 0..m {
        let (a, b) = (job.initial[l] as usize, job.final_layout[l] as usize);
        if touched[a] {
            sigma[local[a] as usize] = local[b] as usize;
        }
    }
    let u = circuit_unitary(&out)?;
    let v = circuit_unitary(&expected)?;
    Ok(equivalent_up_to_phase_and_perm(&u, &v, &sigma, tol))
}
