// SPDX-License-Identifier: Apache-2.0

//! Corpus benchmark: transpile every file and tabulate input and output
//! sizes. Files run in parallel; rows come back in input order.

use std::io;
use std::path::{Path, PathBuf};
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::device::DeviceModel;
use crate::metrics::depth;
use crate::pipeline::{transpile_source, TranspileOptions};
use crate::Circuit;

/// One CSV row. Column order is fixed by field order.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchRow {
    pub file: String,
    pub qubits: usize,
    pub in_2q: usize,
    pub in_total: usize,
    pub in_depth: usize,
    pub out_2q: usize,
    pub out_total: usize,
    pub out_depth: usize,
    pub time_ms: f64,
    pub status: String,
}

pub const CSV_HEADER: &str = "file,qubits,in_2q,in_total,in_depth,out_2q,out_total,out_depth,time_ms,status";

/// `.qasm` files directly inside `dir`, sorted by name.
pub fn corpus(dir: &Path) -> io::Result<Vec<PathBuf>> {
    let mut files = Vec::new();
    for entry in std::fs::read_dir(dir)? {
        let path = entry?.path();
        if path.is_file() && path.extension().is_some_and(|e| e == "qasm") {
            files.push(path);
        }
    }
    files.sort();
    Ok(files)
}

fn sizes(c: &Circuit) -> (usize, usize, usize) {
    (c.two_qubit_gate_count(), c.op_count(), depth(c))
}

fn bench_file(path: &Path, d: &DeviceModel, opts: &TranspileOptions) -> BenchRow {
    let file = path
        .file_name()
        .map_or_else(|| path.display().to_string(), |n| n.to_string_lossy().into_owned());
    let mut row = BenchRow {
        file,
        qubits: 0,
        in_2q: 0,
        in_total: 0,
        in_depth: 0,
        out_2q: 0,
        out_total: 0,
        out_depth: 0,
        time_ms: 0.0,
        status: String::new(),
    };
    let source = match std::fs::read_to_string(path) {
        Ok(s) => s,
        Err(e) => {
            row.status = format!("io error: {e}");
            return row;
        }
    };
    let start = Instant::now();
    match transpile_source(&source, d, opts) {
        Ok((input, job, _)) => {
            row.time_ms = (start.elapsed().as_secs_f64() * 1e6).round() / 1e3;
            row.qubits = input.num_qubits();
            (row.in_2q, row.in_total, row.in_depth) = sizes(&input);
            (row.out_2q, row.out_total, row.out_depth) = sizes(&job.circuit);
            row.status = "ok".into();
        }
        Err(e) => row.status = e.to_string(),
    }
    row
}

pub fn run_bench(files: &[PathBuf], d: &DeviceModel, opts: &TranspileOptions) -> Vec<BenchRow> {
    files.par_iter().map(|f| bench_file(f, d, opts)).collect()
}

pub fn write_csv<W: io::Write>(rows: &[BenchRow], out: W) -> Result<(), csv::Error> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(out);
    w.write_record(CSV_HEADER.split(','))?;
    for row in rows {
        w.serialize(row)?;
    }
    w.flush()?;
    Ok(())
}

/// Fixed-width table for terminals.
pub fn format_table(rows: &[BenchRow]) -> String {
    let width = rows.iter().map(|r| r.file.len()).max().unwrap_or(4).max(4);
    let mut s = format!(
        "{:<width$} {:>6} {:>8} {:>8} {:>8} {:>8} {:>9} {:>9} {:>10}  status\n",
        "file", "qubits", "in_2q", "in_total", "in_depth", "out_2q", "out_total", "out_depth", "time_ms"
    );
    for r in rows {
        s += &format!(
            "{:<width$} {:>6} {:>8} {:>8} {:>8} {:>8} {:>9} {:>9} {:>10.2}  {}\n",
            r.file, r.qubits, r.in_2q, r.in_total, r.in_depth, r.out_2q, r.out_total, r.out_depth, r.time_ms, r.status
        );
    }
    s
}
