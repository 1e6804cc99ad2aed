// SPDX-License-Identifier: Apache-2.0

use std::fmt;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use qtranspile_core::bench::{corpus, format_table, run_bench, write_csv};
use qtranspile_core::device::{resolve_device, DeviceModel};
use qtranspile_core::metrics::compute_metrics;
use qtranspile_core::oracle::{circuit_unitary, conjugate_by_perm, equivalent_up_to_phase_and_perm};
use qtranspile_core::pipeline::{transpile_source, verify_transpiled, StageTimings, TranspileError, TranspileOptions};
use qtranspile_core::qasm::parse;
use qtranspile_core::simopt::QubitPriority;

#[derive(Parser)]
#[command(
    name = "qtranspile",
    version,
    about = "Transpile OpenQASM 2.0 circuits for a target device"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Transpile one circuit.
    Run(RunArgs),
    /// Transpile every .qasm file in a directory and write a CSV report.
    Bench(BenchArgs),
    /// Check two circuits for equality up to global phase.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct Target {
    /// Built-in device name, `line:N`, `full:N` or a device JSON path.
    #[arg(short, long)]
    device: String,
    /// Basis backend: ibmq, rigetti, ionq or quantinuum.
    #[arg(short, long)]
    backend: String,
    /// SWAP candidate radius in hops, or `none` to score every edge.
    #[arg(long, default_value = "2", value_parser = parse_radius)]
    prune_radius: Radius,
    /// Router seed. The router is deterministic; the value is recorded only.
    #[arg(long, env = "QTRANSPILE_SEED", default_value_t = 0)]
    seed: u64,
}

#[derive(Clone, Copy)]
struct Radius(Option<u32>);

fn parse_radius(s: &str) -> Result<Radius, String> {
    if s == "none" {
        return Ok(Radius(None));
    }
    match s.parse::<u32>() {
        Ok(r) if r >= 1 => Ok(Radius(Some(r))),
        _ => Err(format!("expected a positive integer or `none`, got `{s}`")),
    }
}

#[derive(Args)]
struct RunArgs {
    #[arg(short, long)]
    input: PathBuf,
    #[arg(short, long)]
    output: PathBuf,
    #[command(flatten)]
    target: Target,
    /// Route inside a region the size of the circuit and write
    /// `<output>.layout.json` mapping region qubits to device qubits.
    #[arg(long)]
    constrained: bool,
    /// Comma list of qubits, highest priority first.
    #[arg(long, value_parser = clap::builder::ValueParser::new(|s: &str| s.parse::<QubitPriority>().map_err(|e| e.to_string())))]
    qubit_priority: Option<QubitPriority>,
    /// Print output metrics as JSON.
    #[arg(long)]
    stats: bool,
    /// Check the output against the input with the unitary oracle.
    #[arg(long)]
    verify: bool,
    /// Print wall time per stage.
    #[arg(long)]
    time: bool,
}

#[derive(Args)]
struct BenchArgs {
    dir: PathBuf,
    #[arg(short, long)]
    output: PathBuf,
    #[command(flatten)]
    target: Target,
}

#[derive(Args)]
struct VerifyArgs {
    a: PathBuf,
    b: PathBuf,
    /// Qubit permutation taking `b` onto `a`: qubit q of b is qubit perm[q] of a.
    #[arg(long, value_delimiter = ',')]
    perm: Option<Vec<usize>>,
    #[arg(long, default_value_t = 1e-6)]
    tol: f64,
}

/// Failure classes, each with its own exit code.
enum Failure {
    Io(String),
    Parse(String),
    Device(String),
    Routing(String),
    Decompose(String),
    Usage(String),
    NotEquivalent(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 1,
            Failure::Io(_) => 2,
            Failure::Parse(_) => 3,
            Failure::Device(_) => 4,
            Failure::Routing(_) => 5,
            Failure::Decompose(_) => 6,
            Failure::NotEquivalent(_) => 7,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Io(m) => write!(f, "io error: {m}"),
            Failure::Parse(m) => write!(f, "parse error: {m}"),
            Failure::Device(m) => write!(f, "device error: {m}"),
            Failure::Routing(m) => write!(f, "routing error: {m}"),
            Failure::Decompose(m) => write!(f, "decompose error: {m}"),
            Failure::Usage(m) => write!(f, "{m}"),
            Failure::NotEquivalent(m) => write!(f, "not equivalent: {m}"),
        }
    }
}

impl From<TranspileError> for Failure {
    fn from(e: TranspileError) -> Self {
        match e {
            TranspileError::Parse(e) => Failure::Parse(e.to_string()),
            TranspileError::Device(e) => Failure::Device(e.to_string()),
            TranspileError::Route(e) => Failure::Routing(e.to_string()),
            TranspileError::Decompose(e) => Failure::Decompose(e.to_string()),
            TranspileError::Priority(e) => Failure::Usage(e.to_string()),
            TranspileError::Emit(e) => Failure::Io(e.to_string()),
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn write(path: &Path, contents: &[u8]) -> Result<(), Failure> {
    std::fs::write(path, contents).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn setup(t: &Target) -> Result<(DeviceModel, TranspileOptions), Failure> {
    let device = resolve_device(&t.device).map_err(|e| Failure::Device(e.to_string()))?;
    let mut opts = TranspileOptions::new(&t.backend);
    opts.router.prune_radius = t.prune_radius.0;
    opts.router.seed = t.seed;
    Ok((device, opts))
}

fn print_timings(t: &StageTimings) {
    let total = t.total().as_secs_f64();
    let stages = [
        ("parse", t.parse),
        ("configure", t.configure),
        ("route", t.route),
        ("decompose", t.decompose),
        ("emit", t.emit),
    ];
    for (name, d) in stages {
        let ms = d.as_secs_f64() * 1e3;
        let share = if total > 0.0 {
            100.0 * d.as_secs_f64() / total
        } else {
            0.0
        };
        eprintln!("{name:<10} {ms:>10.3} ms {share:>5.1}%");
    }
    eprintln!("{:<10} {:>10.3} ms", "total", total * 1e3);
}

fn run(args: RunArgs) -> Result<(), Failure> {
    let source = read(&args.input)?;
    let (device, mut opts) = setup(&args.target)?;
    opts.constrained = args.constrained;
    opts.priority = args.qubit_priority;
    let (input, job, text) = transpile_source(&source, &device, &opts)?;
    write(&args.output, text.as_bytes())?;
    if args.constrained {
        let layout = serde_json::json!({
            "physical_ids": job.physical_ids,
            "initial": job.initial[..input.num_qubits()],
            "final": job.final_layout[..input.num_qubits()],
        });
        let mut sidecar = args.output.into_os_string();
        sidecar.push(".layout.json");
        write(Path::new(&sidecar), format!("{layout:#}\n").as_bytes())?;
    }
    if args.time {
        print_timings(&job.timings);
    }
    if args.stats {
        let m = compute_metrics(&job.circuit);
        println!("{}", serde_json::to_string(&m).expect("metrics serialize"));
    }
    if args.verify {
        match verify_transpiled(&input, &job, 1e-6) {
            Ok(true) => eprintln!("verify: equivalent"),
            Ok(false) => return Err(Failure::NotEquivalent("output differs from input".into())),
            Err(e) => return Err(Failure::Usage(format!("verify: {e}"))),
        }
    }
    Ok(())
}

fn bench(args: BenchArgs) -> Result<(), Failure> {
    let (device, opts) = setup(&args.target)?;
    let files = corpus(&args.dir).map_err(|e| Failure::Io(format!("{}: {e}", args.dir.display())))?;
    let rows = run_bench(&files, &device, &opts);
    let mut csv = Vec::new();
    write_csv(&rows, &mut csv).map_err(|e| Failure::Io(e.to_string()))?;
    write(&args.output, &csv)?;
    print!("{}", format_table(&rows));
    Ok(())
}

fn verify(args: VerifyArgs) -> Result<(), Failure> {
    let load = |p: &Path| -> Result<_, Failure> {
        parse(&read(p)?).map_err(|e| Failure::Parse(format!("{}: {e}", p.display())))
    };
    let (a, b) = (load(&args.a)?, load(&args.b)?);
    let n = a.num_qubits().max(b.num_qubits());
    let (a, b) = (a.widened(n), b.widened(n));
    let perm = args.perm.unwrap_or_else(|| (0..n).collect());
    let mut seen = vec![false; n];
    if perm.len() != n || perm.iter().any(|&p| p >= n || std::mem::replace(&mut seen[p], true)) {
        return Err(Failure::Usage(format!("--perm must be a permutation of 0..{n}")));
    }
    let ua = circuit_unitary(&a).map_err(|e| Failure::Usage(e.to_string()))?;
    let ub = conjugate_by_perm(&circuit_unitary(&b).map_err(|e| Failure::Usage(e.to_string()))?, &perm);
    let identity: Vec<usize> = (0..n).collect();
    if equivalent_up_to_phase_and_perm(&ua, &ub, &identity, args.tol) {
        println!("equivalent");
        Ok(())
    } else {
        Err(Failure::NotEquivalent(format!(
            "{} vs {}",
            args.a.display(),
            args.b.display()
        )))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Run(a) => run(a),
        Command::Bench(a) => bench(a),
        Command::Verify(a) => verify(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {f}");
            ExitCode::from(f.code())
        }
    }
}
