//! Command-line front end.
//!
//! Matrices, vectors and states are read from JSON files in the
//! `{"size": N, "data": ...}` layout; results are written as CSV (or JSON for
//! `eig`) to `--out`, which defaults to standard output (`-`). Exit codes:
//! 0 on success, 1 for invalid input or flags, 2 for numerical failures.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{ArgGroup, Args, Parser, Subcommand};
use num_complex::Complex64;
use serde::Deserialize;
use thiserror::Error;

use crate::apps::{fourier_probe, sweep, weighted_average};
use crate::bench::{run_benchmark, BenchConfig};
use crate::error::Error as CoreError;
use crate::evolve::evolve_expectation;
use crate::intop::{weighted_integral, Horizon, QuantumState, WeightExponent};
use crate::matcore::{eigendecompose, ComplexMatrix, ComplexVector};

/// Environment variable capping worker threads for `sweep` and `fourier`.
pub const THREADS_ENV: &str = "WEIGHTINT_THREADS";

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error("missing required flag {0}")]
    MissingFlag(&'static str),

    #[error("malformed input file {path} (--{flag}): {message}")]
    MalformedInputFile {
        path: PathBuf,
        flag: &'static str,
        message: String,
    },

    #[error("cannot write {path}: {source}")]
    Output { path: String, source: io::Error },

    #[error("{context}: {source}")]
    Numerical { context: String, source: CoreError },

    #[error("{context}: {source}")]
    Invalid { context: String, source: CoreError },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Numerical { .. } => 2,
            _ => 1,
        }
    }

    fn from_core(context: impl Into<String>, source: CoreError) -> Self {
        let context = context.into();
        match source {
            CoreError::NonHermitianInput { .. }
            | CoreError::ConvergenceFailure { .. }
            | CoreError::DegenerateGrid { .. } => Self::Numerical { context, source },
            _ => Self::Invalid { context, source },
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Debug, Parser)]
#[command(
    name = "weightint",
    version,
    about = "Exponentially weighted time integrals of quantum expectation values"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Diagonalize a Hermitian matrix (JSON output).
    Eig(EigArgs),
    /// Sample ⟨S⟩(t) on a uniform grid (CSV `t,re,im`).
    Evolve(EvolveArgs),
    /// Weighted integral ∫⟨S⟩ e^{-at} dt via the integral operator (CSV `re,im`).
    Integrate(IntegrateArgs),
    /// Normalized weighted time average with weight e^{-t/τ}.
    Average(AverageArgs),
    /// Damped Fourier amplitudes at chosen frequencies (CSV `omega,re,im`).
    Fourier(FourierArgs),
    /// Infinite-horizon integral over a family of Hamiltonians (CSV `label,re,im`).
    Sweep(SweepArgs),
    /// Timing comparison against evolve-then-trapezoid (CSV).
    Bench(BenchArgs),
}

#[derive(Debug, Args)]
struct Common {
    /// Reduced Planck constant.
    #[arg(long, default_value_t = 1.0)]
    hbar: f64,
    /// Output path, `-` for standard output.
    #[arg(long, default_value = "-")]
    out: String,
}

#[derive(Debug, Args)]
struct SystemArgs {
    /// Hamiltonian matrix (JSON `{"size", "data"}`).
    #[arg(long)]
    hamiltonian: PathBuf,
    /// Observable matrix.
    #[arg(long)]
    observable: PathBuf,
    /// Pure state vector or density matrix.
    #[arg(long)]
    state: PathBuf,
}

#[derive(Debug, Args)]
#[group(multiple = false)]
struct RateArgs {
    /// Decay rate, the real part of a (1/time).
    #[arg(long)]
    rate: Option<f64>,
    /// Decay time; shorthand for --rate 1/τ.
    #[arg(long)]
    tau: Option<f64>,
}

#[derive(Debug, Args)]
struct EigArgs {
    /// Hamiltonian matrix (JSON `{"size", "data"}`).
    #[arg(long)]
    hamiltonian: PathBuf,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Args)]
struct EvolveArgs {
    #[command(flatten)]
    system: SystemArgs,
    /// End of the time grid.
    #[arg(long = "t-max")]
    t_max: f64,
    /// Number of intervals; the grid has steps + 1 points.
    #[arg(long)]
    steps: usize,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Args)]
struct IntegrateArgs {
    #[command(flatten)]
    system: SystemArgs,
    #[command(flatten)]
    rate: RateArgs,
    /// Angular frequency, the imaginary part of a.
    #[arg(long, default_value_t = 0.0)]
    frequency: f64,
    /// Upper limit: a time or `inf`.
    #[arg(long)]
    t: String,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Args)]
struct AverageArgs {
    #[command(flatten)]
    system: SystemArgs,
    /// Decay time τ of the weight e^{-t/τ}.
    #[arg(long)]
    tau: f64,
    /// Upper limit: a time or `inf`.
    #[arg(long)]
    t: String,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("grid").args(["omegas", "omega_min"]).required(true)))]
struct FourierArgs {
    #[command(flatten)]
    system: SystemArgs,
    /// Decay time τ of the weight e^{-t/τ}.
    #[arg(long)]
    tau: f64,
    /// Comma-separated angular frequencies.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    omegas: Vec<f64>,
    /// Start of an evenly spaced window (with --omega-max, --omega-count).
    #[arg(long = "omega-min", requires_all = ["omega_max", "omega_count"], allow_negative_numbers = true)]
    omega_min: Option<f64>,
    /// End of the window (inclusive).
    #[arg(long = "omega-max", allow_negative_numbers = true)]
    omega_max: Option<f64>,
    /// Number of frequencies in the window.
    #[arg(long = "omega-count")]
    omega_count: Option<usize>,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("family").args(["dir", "manifest"]).required(true)))]
struct SweepArgs {
    /// Directory of `<label>.json` Hamiltonians, processed in label order.
    #[arg(long)]
    dir: Option<PathBuf>,
    /// JSON list of `{"label": x, "path": "h.json"}`; paths relative to the manifest.
    #[arg(long)]
    manifest: Option<PathBuf>,
    /// Observable matrix.
    #[arg(long)]
    observable: PathBuf,
    /// Pure state vector or density matrix.
    #[arg(long)]
    state: PathBuf,
    #[command(flatten)]
    rate: RateArgs,
    /// Angular frequency, the imaginary part of a.
    #[arg(long, default_value_t = 0.0)]
    frequency: f64,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Args)]
struct BenchArgs {
    /// Comma-separated matrix sizes.
    #[arg(long, value_delimiter = ',', required = true)]
    sizes: Vec<usize>,
    /// Comma-separated trapezoid step counts.
    #[arg(long, value_delimiter = ',', required = true)]
    steps: Vec<usize>,
    /// Random systems per size.
    #[arg(long, default_value_t = 200)]
    repeats: usize,
    /// Seed for the random Hamiltonians (required).
    #[arg(long)]
    seed: Option<u64>,
    /// Decay time τ of the weight.
    #[arg(long, default_value_t = 10.0)]
    tau: f64,
    /// Largest evaluation time.
    #[arg(long = "t-max", default_value_t = 50.0)]
    t_max: f64,
    /// Evaluation times per system.
    #[arg(long = "eval-points", default_value_t = 50)]
    eval_points: usize,
    /// Output path, `-` for standard output.
    #[arg(long, default_value = "-")]
    out: String,
}

/// Parses `argv` (including the program name), runs the subcommand and
/// returns the process exit code. Results go to `stdout` when `--out -`;
/// diagnostics go to `stderr`.
pub fn parse_and_dispatch<I, T>(argv: I, stdout: &mut (dyn Write + Send), stderr: &mut (dyn Write + Send)) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let rendered = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{rendered}");
                    0
                }
                _ => {
                    let _ = write!(stderr, "{rendered}");
                    1
                }
            };
        }
    };

    let result = match thread_cap() {
        Ok(Some(threads)) => match rayon::ThreadPoolBuilder::new().num_threads(threads).build() {
            Ok(pool) => pool.install(|| dispatch(cli.command, stdout, stderr)),
            Err(e) => Err(CliError::Usage(format!("cannot start thread pool: {e}"))),
        },
        Ok(None) => dispatch(cli.command, stdout, stderr),
        Err(e) => Err(e),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}

fn thread_cap() -> CliResult<Option<usize>> {
    match std::env::var(THREADS_ENV) {
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(Some(n)),
            _ => Err(CliError::Usage(format!(
                "{THREADS_ENV} must be a positive integer, got `{v}`"
            ))),
        },
        Err(_) => Ok(None),
    }
}

fn dispatch(command: Command, stdout: &mut (dyn Write + Send), stderr: &mut (dyn Write + Send)) -> CliResult<i32> {
    match command {
        Command::Eig(args) => {
            let h = read_matrix(&args.hamiltonian, "hamiltonian")?;
            let eig = eigendecompose(&h, args.common.hbar)
                .map_err(|e| CliError::from_core(format!("--hamiltonian {}", args.hamiltonian.display()), e))?;
            let text = serde_json::to_string_pretty(&eig).expect("serializable");
            emit(&args.common.out, stdout, |w| writeln!(w, "{text}"))?;
        }
        Command::Evolve(args) => {
            let (h, s, state) = read_system(&args.system)?;
            let series = evolve_expectation(&h, &s, &state, args.t_max, args.steps, args.common.hbar)
                .map_err(|e| CliError::from_core("evolve", e))?;
            emit(&args.common.out, stdout, |w| {
                writeln!(w, "t,re,im")?;
                for (t, v) in series.times().iter().zip(series.values()) {
                    writeln!(w, "{},{}", num(*t), complex(*v))?;
                }
                Ok(())
            })?;
        }
        Command::Integrate(args) => {
            let (h, s, state) = read_system(&args.system)?;
            let horizon = parse_horizon(&args.t)?;
            let weight = resolve_weight(&args.rate, args.frequency, horizon)?;
            let value = weighted_integral(&h, &s, &state, weight, horizon, args.common.hbar)
                .map_err(|e| CliError::from_core("integrate", e))?;
            emit(&args.common.out, stdout, |w| writeln!(w, "re,im\n{}", complex(value)))?;
        }
        Command::Average(args) => {
            let (h, s, state) = read_system(&args.system)?;
            let horizon = parse_horizon(&args.t)?;
            let value = weighted_average(&h, &s, &state, args.tau, horizon, args.common.hbar)
                .map_err(|e| CliError::from_core("average", e))?;
            emit(&args.common.out, stdout, |w| writeln!(w, "value\n{}", num(value)))?;
        }
        Command::Fourier(args) => {
            let (h, s, state) = read_system(&args.system)?;
            let omegas = match (args.omega_min, args.omega_max, args.omega_count) {
                (Some(lo), Some(hi), Some(count)) => window(lo, hi, count)?,
                _ => args.omegas.clone(),
            };
            let probe = fourier_probe(&h, &s, &state, args.tau, &omegas, args.common.hbar)
                .map_err(|e| CliError::from_core("fourier", e))?;
            emit(&args.common.out, stdout, |w| {
                writeln!(w, "omega,re,im")?;
                for (o, v) in probe.omegas.iter().zip(&probe.values) {
                    writeln!(w, "{},{}", num(*o), complex(*v))?;
                }
                Ok(())
            })?;
        }
        Command::Sweep(args) => return run_sweep(args, stdout, stderr),
        Command::Bench(args) => {
            let seed = args
                .seed
                .ok_or(CliError::MissingFlag("--seed (bench runs must be seeded)"))?;
            let cfg = BenchConfig {
                sizes: args.sizes,
                step_counts: args.steps,
                repeats: args.repeats,
                tau: args.tau,
                t_max: args.t_max,
                eval_points: args.eval_points,
                seed,
            };
            let report = run_benchmark(&cfg).map_err(|e| CliError::from_core("bench", e))?;
            for f in &report.failures {
                let _ = writeln!(stderr, "warning: size {} repeat {}: {}", f.size, f.repeat, f.error);
            }
            emit(&args.out, stdout, |w| report.write_csv(w))?;
            if !report.failures.is_empty() {
                return Ok(2);
            }
        }
    }
    Ok(0)
}

fn run_sweep(args: SweepArgs, stdout: &mut (dyn Write + Send), stderr: &mut (dyn Write + Send)) -> CliResult<i32> {
    let s = read_matrix(&args.observable, "observable")?;
    let state = read_state(&args.state)?;
    let weight = resolve_weight(&args.rate, args.frequency, Horizon::Infinite)?;
    let entries = match (&args.dir, &args.manifest) {
        (Some(dir), _) => scan_sweep_dir(dir)?,
        (None, Some(manifest)) => read_manifest(manifest)?,
        (None, None) => return Err(CliError::MissingFlag("--dir or --manifest")),
    };
    let mut family = Vec::with_capacity(entries.len());
    for (label, path) in &entries {
        family.push((*label, read_matrix(path, "hamiltonian")?));
    }
    let result = sweep(&family, &s, &state, weight, args.common.hbar).map_err(|e| CliError::from_core("sweep", e))?;
    let mut failed = false;
    for ((label, err), (_, path)) in result
        .labels
        .iter()
        .zip(&result.values)
        .zip(&entries)
        .filter_map(|((l, v), e)| v.as_ref().err().map(|err| ((l, err), e)))
    {
        failed = true;
        let _ = writeln!(stderr, "error: sweep point label {label} ({}): {err}", path.display());
    }
    emit(&args.common.out, stdout, |w| {
        writeln!(w, "label,re,im")?;
        for (l, v) in result.labels.iter().zip(&result.values) {
            match v {
                Ok(v) => writeln!(w, "{},{}", num(*l), complex(*v))?,
                Err(_) => writeln!(w, "{},NaN,NaN", num(*l))?,
            }
        }
        Ok(())
    })?;
    Ok(if failed { 2 } else { 0 })
}

/// Full double precision: 17 significant digits.
fn num(x: f64) -> String {
    format!("{x:.16e}")
}

fn complex(z: Complex64) -> String {
    format!("{},{}", num(z.re), num(z.im))
}

fn emit(
    out: &str,
    stdout: &mut (dyn Write + Send),
    body: impl FnOnce(&mut dyn Write) -> io::Result<()>,
) -> CliResult<()> {
    let wrap = |source| CliError::Output {
        path: out.to_string(),
        source,
    };
    if out == "-" {
        body(stdout).map_err(wrap)?;
        stdout.flush().map_err(wrap)
    } else {
        let mut file = io::BufWriter::new(fs::File::create(out).map_err(wrap)?);
        body(&mut file).map_err(wrap)?;
        file.flush().map_err(wrap)
    }
}

fn parse_horizon(text: &str) -> CliResult<Horizon> {
    text.parse().map_err(|e| CliError::from_core(format!("--t {text}"), e))
}

fn resolve_weight(rate: &RateArgs, frequency: f64, horizon: Horizon) -> CliResult<WeightExponent> {
    let weight = match (rate.rate, rate.tau) {
        (Some(r), _) => WeightExponent::new(r, frequency).map_err(|e| CliError::from_core("--rate", e))?,
        (None, Some(tau)) => WeightExponent::from_tau(tau)
            .and_then(|w| w.with_frequency(frequency))
            .map_err(|e| CliError::from_core("--tau", e))?,
        (None, None) => WeightExponent::new(0.0, frequency).map_err(|e| CliError::from_core("--frequency", e))?,
    };
    if horizon == Horizon::Infinite && !(weight.rate() > 0.0) {
        return Err(CliError::Usage(
            "an infinite horizon (--t inf) needs --rate > 0 or a finite --tau; the integral does not converge otherwise"
                .into(),
        ));
    }
    Ok(weight)
}

fn window(lo: f64, hi: f64, count: usize) -> CliResult<Vec<f64>> {
    if count == 0 || !(lo.is_finite() && hi.is_finite()) {
        return Err(CliError::Usage(
            "--omega-count must be >= 1 and the window bounds finite".into(),
        ));
    }
    if count == 1 {
        return Ok(vec![lo]);
    }
    Ok((0..count)
        .map(|k| lo + (hi - lo) * k as f64 / (count - 1) as f64)
        .collect())
}

fn read_text(path: &Path, flag: &'static str) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| CliError::MalformedInputFile {
        path: path.to_path_buf(),
        flag,
        message: e.to_string(),
    })
}

fn malformed(path: &Path, flag: &'static str, message: impl ToString) -> CliError {
    CliError::MalformedInputFile {
        path: path.to_path_buf(),
        flag,
        message: message.to_string(),
    }
}

pub fn read_matrix(path: &Path, flag: &'static str) -> CliResult<ComplexMatrix> {
    let text = read_text(path, flag)?;
    serde_json::from_str(&text).map_err(|e| malformed(path, flag, e))
}

/// A state file holds either a vector (pure state) or a matrix (density).
pub fn read_state(path: &Path) -> CliResult<QuantumState> {
    const FLAG: &str = "state";
    let text = read_text(path, FLAG)?;
    let value: serde_json::Value = serde_json::from_str(&text).map_err(|e| malformed(path, FLAG, e))?;
    let is_matrix = value
        .get("data")
        .and_then(|d| d.get(0))
        .and_then(|row| row.get(0))
        .is_some_and(|entry| entry.is_array());
    let state = if is_matrix {
        let rho: ComplexMatrix = serde_json::from_str(&text).map_err(|e| malformed(path, FLAG, e))?;
        QuantumState::density(rho)
    } else {
        let psi: ComplexVector = serde_json::from_str(&text).map_err(|e| malformed(path, FLAG, e))?;
        QuantumState::pure(psi)
    };
    state.map_err(|e| malformed(path, FLAG, e))
}

fn read_system(args: &SystemArgs) -> CliResult<(ComplexMatrix, ComplexMatrix, QuantumState)> {
    Ok((
        read_matrix(&args.hamiltonian, "hamiltonian")?,
        read_matrix(&args.observable, "observable")?,
        read_state(&args.state)?,
    ))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ManifestEntry {
    label: f64,
    path: PathBuf,
}

fn read_manifest(path: &Path) -> CliResult<Vec<(f64, PathBuf)>> {
    let text = read_text(path, "manifest")?;
    let entries: Vec<ManifestEntry> = serde_json::from_str(&text).map_err(|e| malformed(path, "manifest", e))?;
    let base = path.parent().unwrap_or_else(|| Path::new("."));
    Ok(entries
        .into_iter()
        .map(|e| {
            (
                e.label,
                if e.path.is_absolute() {
                    e.path
                } else {
                    base.join(e.path)
                },
            )
        })
        .collect())
}

fn scan_sweep_dir(dir: &Path) -> CliResult<Vec<(f64, PathBuf)>> {
    let listing = fs::read_dir(dir).map_err(|e| malformed(dir, "dir", e))?;
    let mut entries = Vec::new();
    for entry in listing {
        let path = entry.map_err(|e| malformed(dir, "dir", e))?.path();
        if path.extension().and_then(|e| e.to_str()) != Some("json") {
            continue;
        }
        let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or_default();
        let label: f64 = stem
            .parse()
            .map_err(|_| malformed(&path, "dir", format!("file name `{stem}` is not a numeric label")))?;
        entries.push((label, path));
    }
    if entries.is_empty() {
        return Err(malformed(dir, "dir", "no `<label>.json` files found"));
    }
    entries.sort_by(|a, b| a.0.total_cmp(&b.0));
    Ok(entries)
}
