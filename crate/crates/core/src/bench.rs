//! Timing comparison of the integral operator against evolve-then-trapezoid.
//!
//! Protocol: random Hermitian Hamiltonians with uniform(-0.5, 0.5) real and
//! imaginary parts, the number operator `diag(0..n)` as observable, and a
//! density matrix initialized in the highest basis state. Each system is
//! diagonalized outside the timed region; both methods then compute the
//! weighted integral at `eval_points` evenly spaced times up to `t_max`, and
//! the reported time is the mean cost per time point.

use std::fmt;
use std::hint::black_box;
use std::io::{self, Write};
use std::time::Instant;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::evolve::{evolve_in_eigenbasis, trapezoid_weighted_integral};
use crate::intop::{expectation, IntegralOperator, QuantumState, WeightExponent};
use crate::matcore::{eigendecompose, ComplexMatrix, ComplexVector};

/// Generator behind every seeded run: ChaCha with 8 rounds (`rand_chacha`).
pub type BenchRng = ChaCha8Rng;

pub fn bench_rng(seed: u64) -> BenchRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `(A + A†)/2` with `Re A_ij, Im A_ij ~ U(-0.5, 0.5)` drawn row-major, real
/// part first.
pub fn random_hermitian<R: Rng + ?Sized>(n: usize, rng: &mut R) -> ComplexMatrix {
    assert!(n >= 1, "matrix size must be at least 1");
    let mut a = ComplexMatrix::zeros(n);
    for i in 0..n {
        for j in 0..n {
            a[(i, j)] = Complex64::new(rng.random_range(-0.5..0.5), rng.random_range(-0.5..0.5));
        }
    }
    let mut h = ComplexMatrix::zeros(n);
    for i in 0..n {
        h[(i, i)] = Complex64::new(a[(i, i)].re, 0.0);
        for j in (i + 1)..n {
            let v = 0.5 * (a[(i, j)] + a[(j, i)].conj());
            h[(i, j)] = v;
            h[(j, i)] = v.conj();
        }
    }
    h
}

/// `diag(0, 1, …, n-1)`.
pub fn number_operator(n: usize) -> ComplexMatrix {
    let diag: Vec<f64> = (0..n).map(|k| k as f64).collect();
    ComplexMatrix::from_real_diagonal(&diag)
}

/// Projector onto the last basis vector.
pub fn highest_state(n: usize) -> QuantumState {
    QuantumState::Density(ComplexVector::basis(n, n - 1).outer_self())
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchConfig {
    pub sizes: Vec<usize>,
    pub step_counts: Vec<usize>,
    pub repeats: usize,
    pub tau: f64,
    pub t_max: f64,
    /// Number of evaluation times `t_max·k/eval_points`, `k = 1..=eval_points`.
    pub eval_points: usize,
    pub seed: u64,
}

impl Default for BenchConfig {
    fn default() -> Self {
        Self {
            sizes: vec![4, 8, 16, 32],
            step_counts: vec![100, 1000, 10000],
            repeats: 200,
            tau: 10.0,
            t_max: 50.0,
            eval_points: 50,
            seed: 0,
        }
    }
}

impl BenchConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: &str| Err(Error::InvalidArgument(msg.to_string()));
        if self.sizes.is_empty() || self.sizes.contains(&0) {
            return bad("sizes must be a non-empty list of positive integers");
        }
        if self.step_counts.is_empty() || self.step_counts.contains(&0) {
            return bad("step counts must be a non-empty list of positive integers");
        }
        if self.repeats == 0 {
            return bad("repeats must be at least 1");
        }
        if self.eval_points == 0 {
            return bad("eval_points must be at least 1");
        }
        if !(self.tau.is_finite() && self.tau > 0.0) {
            return bad("tau must be positive");
        }
        if !(self.t_max.is_finite() && self.t_max > 0.0) {
            return bad("t_max must be positive");
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    IntegralOperator,
    Trapezoid,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::IntegralOperator => "integral_operator",
            Self::Trapezoid => "trapezoid",
        })
    }
}

/// One aggregate row: means over the successful repeats.
#[derive(Debug, Clone, PartialEq)]
pub struct BenchRecord {
    pub size: usize,
    pub steps: usize,
    pub method: Method,
    /// Mean wall-clock seconds per evaluation time point.
    pub mean_time: f64,
    /// Mean weighted integral at `t_max`.
    pub value: f64,
    /// Mean `|value - operator value|` at `t_max`; zero for operator rows.
    pub abs_error: f64,
}

#[derive(Debug, Clone)]
pub struct BenchFailure {
    pub size: usize,
    pub repeat: usize,
    pub error: Error,
}

#[derive(Debug, Clone)]
pub struct BenchReport {
    pub records: Vec<BenchRecord>,
    pub failures: Vec<BenchFailure>,
}

impl BenchReport {
    pub fn write_csv<W: Write>(&self, mut out: W) -> io::Result<()> {
        writeln!(out, "size,steps,method,mean_time_s,value,abs_error")?;
        for r in &self.records {
            writeln!(
                out,
                "{},{},{},{:.16e},{:.16e},{:.16e}",
                r.size, r.steps, r.method, r.mean_time, r.value, r.abs_error
            )?;
        }
        Ok(())
    }
}

struct Sample {
    operator_time: f64,
    operator_value: Complex64,
    trapezoid: Vec<(f64, Complex64)>,
}

fn measure(h: &ComplexMatrix, cfg: &BenchConfig) -> Result<Sample> {
    let n = h.size();
    let s = number_operator(n);
    let state = highest_state(n);
    let weight = WeightExponent::from_tau(cfg.tau)?;
    let times: Vec<f64> = (1..=cfg.eval_points)
        .map(|k| cfg.t_max * k as f64 / cfg.eval_points as f64)
        .collect();
    let points = times.len() as f64;

    // Not timed: needed by both methods.
    let eig = eigendecompose(h, 1.0)?;

    let start = Instant::now();
    let op = IntegralOperator::build(&s, &eig, weight)?;
    let mut operator_value = Complex64::new(0.0, 0.0);
    for &t in &times {
        operator_value = black_box(expectation(&op.evaluate(t), &state, &eig)?);
    }
    let operator_time = start.elapsed().as_secs_f64() / points;

    let mut trapezoid = Vec::with_capacity(cfg.step_counts.len());
    for &steps in &cfg.step_counts {
        let start = Instant::now();
        let s_eig = eig.to_eigenbasis(&s)?;
        let state_eig = state.to_eigenbasis(&eig)?;
        let mut value = Complex64::new(0.0, 0.0);
        for &t in &times {
            let series = evolve_in_eigenbasis(&eig, &s_eig, &state_eig, t, steps)?;
            value = black_box(trapezoid_weighted_integral(&series, weight)?);
        }
        trapezoid.push((start.elapsed().as_secs_f64() / points, value));
    }

    Ok(Sample {
        operator_time,
        operator_value,
        trapezoid,
    })
}

/// Runs the configured grid single-threaded. Hamiltonians are drawn from one
/// seeded stream in `(size, repeat)` order, so values are reproducible for a
/// fixed config; a repeat that fails numerically is recorded and skipped.
pub fn run_benchmark(cfg: &BenchConfig) -> Result<BenchReport> {
    cfg.validate()?;
    let mut rng = bench_rng(cfg.seed);
    let mut records = Vec::new();
    let mut failures = Vec::new();

    for &size in &cfg.sizes {
        let hamiltonians: Vec<ComplexMatrix> = (0..cfg.repeats).map(|_| random_hermitian(size, &mut rng)).collect();
        let samples: Vec<Sample> = hamiltonians
            .iter()
            .enumerate()
            .filter_map(|(repeat, h)| match measure(h, cfg) {
                Ok(sample) => Some(sample),
                Err(error) => {
                    failures.push(BenchFailure { size, repeat, error });
                    None
                }
            })
            .collect();
        if samples.is_empty() {
            continue;
        }
        let count = samples.len() as f64;
        let mean = |f: &dyn Fn(&Sample) -> f64| samples.iter().map(f).sum::<f64>() / count;

        let op_time = mean(&|s| s.operator_time);
        let op_value = mean(&|s| s.operator_value.re);
        for (k, &steps) in cfg.step_counts.iter().enumerate() {
            records.push(BenchRecord {
                size,
                steps,
                method: Method::IntegralOperator,
                mean_time: op_time,
                value: op_value,
                abs_error: 0.0,
            });
            records.push(BenchRecord {
                size,
                steps,
                method: Method::Trapezoid,
                mean_time: mean(&|s| s.trapezoid[k].0),
                value: mean(&|s| s.trapezoid[k].1.re),
                abs_error: mean(&|s| (s.trapezoid[k].1 - s.operator_value).norm()),
            });
        }
    }
    Ok(BenchReport { records, failures })
}
