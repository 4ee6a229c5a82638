//! Batch driver: verification suites, frequency spectra, oscillator reports
//! and classical trajectories. Exit codes partition outcomes: 0 pass,
//! 1 check failure, 2 usage error, 3 I/O failure, 4 divergence.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};

use genmat::dynamics::HamiltonianSet;
use genmat::error::Error;
use genmat::nambu::{integrate, NambuSystem};
use genmat::oscillator::{verify_oscillator, OscillatorConfig, OscillatorRank};
use genmat::perm::for_each_tuple;
use genmat::report::{run_verification, Suite, SuiteParams};
use genmat::spectrum::{PairTable, PlanckConstants};

const EXIT_CHECK_FAILURE: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_IO: u8 = 3;
const EXIT_DIVERGENCE: u8 = 4;

#[derive(Parser)]
#[command(
    name = "genmat",
    about = "generalized matrix mechanics: verification, spectra, oscillators, classical trajectories",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run seeded verification suites and write a JSON report.
    Verify(VerifyArgs),
    /// Build the frequency spectrum of a Hamiltonian input file.
    Spectrum(SpectrumArgs),
    /// Check the closed-form oscillator relations at chosen times.
    Oscillator(OscillatorArgs),
    /// Integrate a classical bracket system and export the trajectory.
    Nambu(NambuArgs),
}

#[derive(Args)]
struct VerifyArgs {
    /// Rank of the matrices under test (>= 2).
    #[arg(long, default_value_t = 3)]
    n: usize,
    /// Number of levels per index (>= 2).
    #[arg(long, default_value_t = 4)]
    dim: usize,
    /// Seed for every random draw in the run.
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Base tolerance multiplied by each case's size scale.
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
    /// Which suite to run: algebra, cohomology, spectrum, dynamics,
    /// oscillator, nambu or all.
    #[arg(long, default_value = "all")]
    suite: String,
    /// Report destination; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SpectrumArgs {
    /// JSON input naming the rank, levels and Hamiltonian tables.
    #[arg(long)]
    input: PathBuf,
    /// Spectrum destination; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct OscillatorArgs {
    /// Oscillator rank: 2 or 3.
    #[arg(long)]
    n: usize,
    /// Angular frequency (> 0).
    #[arg(long)]
    omega: f64,
    /// Comma-separated sample times.
    #[arg(long, default_value = "0,0.3,1.7")]
    times: String,
    /// Report destination; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct NambuArgs {
    /// JSON system file: dimension, polynomial Hamiltonians, fd step.
    #[arg(long)]
    system: PathBuf,
    /// Comma-separated initial point.
    #[arg(long)]
    x0: String,
    /// Final time (> 0).
    #[arg(long)]
    t1: f64,
    /// Fixed step (> 0).
    #[arg(long)]
    dt: f64,
    /// Trajectory CSV destination.
    #[arg(long)]
    out: PathBuf,
}

/// Hamiltonian input: exactly one of `potentials` (level vectors, one per
/// Hamiltonian) or `pair_tables` (raw antisymmetric tables) must be present.
#[derive(Debug, Deserialize)]
struct InputSpec {
    n: usize,
    dim: usize,
    #[serde(default)]
    hbar: Option<f64>,
    #[serde(default)]
    potentials: Option<Vec<Vec<f64>>>,
    #[serde(default)]
    pair_tables: Option<Vec<Vec<Vec<f64>>>>,
}

#[derive(Serialize)]
struct SpectrumLine {
    idx: Vec<usize>,
    value: f64,
}

#[derive(Serialize)]
struct SpectrumOutput {
    n: usize,
    dim: usize,
    hbar: f64,
    nu: Vec<SpectrumLine>,
    cocycle_defect: f64,
    ritz_defect_max: f64,
}

#[derive(Serialize)]
struct OscillatorCaseOut {
    check: String,
    time: f64,
    max_defect: f64,
    tol: f64,
    pass: bool,
}

#[derive(Serialize)]
struct OscillatorOutput {
    n: usize,
    omega: f64,
    cases: Vec<OscillatorCaseOut>,
    all_pass: bool,
}

#[derive(Serialize)]
struct NambuSummary {
    steps: usize,
    t_end: f64,
    max_drift: Vec<f64>,
    diverged: bool,
}

fn usage(msg: &str) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(EXIT_USAGE)
}

fn io_failure(msg: String) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(EXIT_IO)
}

fn write_output(out: &Option<PathBuf>, body: &str) -> Result<(), ExitCode> {
    match out {
        Some(path) => std::fs::write(path, body)
            .map_err(|e| io_failure(format!("cannot write {}: {e}", path.display()))),
        None => {
            println!("{body}");
            Ok(())
        }
    }
}

fn cmd_verify(args: VerifyArgs) -> ExitCode {
    if args.n < 2 {
        return usage("--n must be at least 2");
    }
    if args.dim < 2 {
        return usage("--dim must be at least 2");
    }
    if args.n > 6 || args.dim > 6 {
        return usage("--n and --dim above 6 exceed the desk-scale kernels");
    }
    let Some(suite) = Suite::parse(&args.suite) else {
        return usage(&format!(
            "unknown suite '{}'; expected algebra|cohomology|spectrum|dynamics|oscillator|nambu|all",
            args.suite
        ));
    };
    let params = SuiteParams {
        n: args.n,
        dim: args.dim,
        seed: args.seed,
        tol: args.tol,
    };
    let report = match run_verification(suite, &params) {
        Ok(r) => r,
        Err(e) => return usage(&format!("verification could not run: {e}")),
    };
    let body = serde_json::to_string_pretty(&report).expect("report serializes");
    // the report is written even when checks fail
    if let Err(code) = write_output(&args.out, &body) {
        return code;
    }
    if report.all_pass() {
        ExitCode::SUCCESS
    } else {
        eprintln!(
            "{} of {} checks failed",
            report.summary.failed, report.summary.total
        );
        ExitCode::from(EXIT_CHECK_FAILURE)
    }
}

fn load_tables(spec: &InputSpec) -> Result<Vec<PairTable>, String> {
    if spec.n < 2 {
        return Err("field 'n' must be at least 2".into());
    }
    if spec.dim < 2 {
        return Err("field 'dim' must be at least 2".into());
    }
    match (&spec.potentials, &spec.pair_tables) {
        (Some(_), Some(_)) => {
            Err("exactly one of 'potentials' and 'pair_tables' may be present".into())
        }
        (None, None) => Err("one of 'potentials' or 'pair_tables' is required".into()),
        (Some(pots), None) => {
            if pots.len() != spec.n - 1 {
                return Err(format!(
                    "field 'potentials' must hold {} level vectors, got {}",
                    spec.n - 1,
                    pots.len()
                ));
            }
            pots.iter()
                .enumerate()
                .map(|(i, e)| {
                    if e.len() != spec.dim {
                        return Err(format!(
                            "field 'potentials[{i}]' must hold {} levels, got {}",
                            spec.dim,
                            e.len()
                        ));
                    }
                    PairTable::from_potential(e)
                        .map_err(|err| format!("field 'potentials[{i}]': {err}"))
                })
                .collect()
        }
        (None, Some(tables)) => {
            if tables.len() != spec.n - 1 {
                return Err(format!(
                    "field 'pair_tables' must hold {} tables, got {}",
                    spec.n - 1,
                    tables.len()
                ));
            }
            tables
                .iter()
                .enumerate()
                .map(|(i, rows)| {
                    let flat: Vec<f64> = rows.iter().flatten().copied().collect();
                    if rows.len() != spec.dim || flat.len() != spec.dim * spec.dim {
                        return Err(format!(
                            "field 'pair_tables[{i}]' must be a {}x{} table",
                            spec.dim, spec.dim
                        ));
                    }
                    PairTable::from_values(spec.dim, flat)
                        .map_err(|err| format!("field 'pair_tables[{i}]': {err}"))
                })
                .collect()
        }
    }
}

fn cmd_spectrum(args: SpectrumArgs) -> ExitCode {
    let raw = match std::fs::read_to_string(&args.input) {
        Ok(s) => s,
        Err(e) => return io_failure(format!("cannot read {}: {e}", args.input.display())),
    };
    let spec: InputSpec = match serde_json::from_str(&raw) {
        Ok(s) => s,
        Err(e) => return usage(&format!("malformed input: {e}")),
    };
    let hbar = spec.hbar.unwrap_or(1.0);
    let constants = match PlanckConstants::new(hbar) {
        Ok(c) => c,
        Err(e) => return usage(&format!("field 'hbar': {e}")),
    };
    let tables = match load_tables(&spec) {
        Ok(t) => t,
        Err(msg) => return usage(&msg),
    };
    let set = match HamiltonianSet::from_tables(spec.n, tables, constants) {
        Ok(s) => s,
        Err(e) => return usage(&format!("cannot build Hamiltonians: {e}")),
    };
    let nu = match set.frequency_cochain() {
        Ok(c) => c,
        Err(e) => return usage(&format!("cannot build the frequency cochain: {e}")),
    };

    // only strictly increasing tuples are listed; the rest follow from total
    // antisymmetry
    let mut lines = Vec::new();
    for_each_tuple(spec.n, spec.dim, |idx| {
        if idx.windows(2).all(|w| w[0] < w[1]) {
            lines.push(SpectrumLine {
                idx: idx.to_vec(),
                value: nu.at(idx),
            });
        }
    });
    let cocycle_defect = genmat::cohomology::coboundary(&nu)
        .map(|d| d.max_abs())
        .unwrap_or(f64::NAN);
    let output = SpectrumOutput {
        n: spec.n,
        dim: spec.dim,
        hbar,
        nu: lines,
        cocycle_defect,
        ritz_defect_max: genmat::cohomology::ritz_defect_max(&nu),
    };
    let body = serde_json::to_string_pretty(&output).expect("spectrum serializes");
    if let Err(code) = write_output(&args.out, &body) {
        return code;
    }
    ExitCode::SUCCESS
}

fn cmd_oscillator(args: OscillatorArgs) -> ExitCode {
    let rank = match args.n {
        2 => OscillatorRank::Two,
        3 => OscillatorRank::Three,
        other => return usage(&format!("--n must be 2 or 3, got {other}")),
    };
    let config = match OscillatorConfig::new(rank, args.omega, PlanckConstants::natural()) {
        Ok(c) => c,
        Err(e) => return usage(&format!("--omega: {e}")),
    };
    let times: Result<Vec<f64>, _> = args
        .times
        .split(',')
        .map(|s| s.trim().parse::<f64>())
        .collect();
    let times = match times {
        Ok(t) if !t.is_empty() => t,
        _ => return usage("--times must be a comma-separated list of numbers"),
    };
    let report = match verify_oscillator(&config, &times) {
        Ok(r) => r,
        Err(e) => return usage(&format!("oscillator checks could not run: {e}")),
    };
    let output = OscillatorOutput {
        n: report.rank,
        omega: report.omega,
        all_pass: report.all_pass(),
        cases: report
            .checks
            .iter()
            .map(|c| OscillatorCaseOut {
                check: c.name.clone(),
                time: c.time,
                max_defect: c.defect,
                tol: c.tol,
                pass: c.pass(),
            })
            .collect(),
    };
    let body = serde_json::to_string_pretty(&output).expect("report serializes");
    if let Err(code) = write_output(&args.out, &body) {
        return code;
    }
    if output.all_pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_CHECK_FAILURE)
    }
}

fn cmd_nambu(args: NambuArgs) -> ExitCode {
    let raw = match std::fs::read_to_string(&args.system) {
        Ok(s) => s,
        Err(e) => return io_failure(format!("cannot read {}: {e}", args.system.display())),
    };
    let sys: NambuSystem = match serde_json::from_str(&raw) {
        Ok(s) => s,
        Err(e) => return usage(&format!("malformed system file: {e}")),
    };
    let sys = match NambuSystem::new(sys.dim, sys.hamiltonians, sys.fd_step) {
        Ok(s) => s,
        Err(e) => return usage(&format!("invalid system: {e}")),
    };
    let x0: Result<Vec<f64>, _> = args
        .x0
        .split(',')
        .map(|s| s.trim().parse::<f64>())
        .collect();
    let x0 = match x0 {
        Ok(v) if v.len() == sys.dim => v,
        Ok(v) => {
            return usage(&format!(
                "--x0 must list {} coordinates, got {}",
                sys.dim,
                v.len()
            ))
        }
        Err(_) => return usage("--x0 must be a comma-separated list of numbers"),
    };
    if !(args.t1 > 0.0) || !(args.dt > 0.0) {
        return usage("--t1 and --dt must be positive");
    }

    let (trajectory, diverged) = match integrate(&sys, &x0, args.t1, args.dt) {
        Ok(t) => (t, false),
        Err((Error::Divergence { t, norm }, partial)) => {
            eprintln!("trajectory diverged at t = {t} (|x| = {norm}); partial output written");
            (partial, true)
        }
        Err((e, _)) => return usage(&format!("integration failed: {e}")),
    };
    if let Err(e) = std::fs::write(&args.out, trajectory.to_csv()) {
        return io_failure(format!("cannot write {}: {e}", args.out.display()));
    }
    let summary = NambuSummary {
        steps: trajectory.times.len().saturating_sub(1),
        t_end: trajectory.times.last().copied().unwrap_or(0.0),
        max_drift: trajectory.max_drift(),
        diverged,
    };
    println!(
        "{}",
        serde_json::to_string_pretty(&summary).expect("summary serializes")
    );
    if diverged {
        ExitCode::from(EXIT_DIVERGENCE)
    } else {
        ExitCode::SUCCESS
    }
}

fn main() -> ExitCode {
    match Cli::parse().command {
        Command::Verify(args) => cmd_verify(args),
        Command::Spectrum(args) => cmd_spectrum(args),
        Command::Oscillator(args) => cmd_oscillator(args),
        Command::Nambu(args) => cmd_nambu(args),
    }
}
