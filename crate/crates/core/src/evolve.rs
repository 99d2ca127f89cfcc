//! Conventional baseline: sample `⟨S⟩(t)` on a uniform grid by exact
//! eigenbasis phase evolution, then integrate with the trapezoidal rule.
//!
//! There is no ODE stepping, so the only discretization error of the
//! baseline is the quadrature error.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::intop::{QuantumState, WeightExponent};
use crate::matcore::{eigendecompose, ComplexMatrix, EigenDecomposition};

/// Samples on a uniform grid `0 = t_0 < … < t_{M-1} = t_max`.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeSeries {
    times: Vec<f64>,
    values: Vec<Complex64>,
}

impl TimeSeries {
    /// Validates `M >= 2`, equal lengths, and a strictly increasing grid
    /// uniform to `1e-12` relative.
    pub fn new(times: Vec<f64>, values: Vec<Complex64>) -> Result<Self> {
        if times.len() < 2 {
            return Err(Error::DegenerateGrid { points: times.len() });
        }
        if times.len() != values.len() {
            return Err(Error::DimensionMismatch {
                expected: times.len(),
                found: values.len(),
            });
        }
        let span = times[times.len() - 1] - times[0];
        let dt = span / (times.len() - 1) as f64;
        if !(dt > 0.0 && dt.is_finite()) {
            return Err(Error::InvalidArgument("time grid must be strictly increasing".into()));
        }
        for (k, w) in times.windows(2).enumerate() {
            let step = w[1] - w[0];
            if !(step > 0.0) || (step - dt).abs() > 1e-12 * span.max(dt) {
                return Err(Error::InvalidArgument(format!(
                    "time grid is not uniform at interval {k}: step {step}, expected {dt}"
                )));
            }
        }
        Ok(Self { times, values })
    }

    /// Uniform grid over `[0, t_max]` with `values.len() - 1` intervals.
    pub fn uniform(t_max: f64, values: Vec<Complex64>) -> Result<Self> {
        let times = uniform_grid(t_max, values.len().saturating_sub(1))?;
        Self::new(times, values)
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn step(&self) -> f64 {
        self.times[1] - self.times[0]
    }
}

fn uniform_grid(t_max: f64, steps: usize) -> Result<Vec<f64>> {
    if steps == 0 {
        return Err(Error::DegenerateGrid { points: 1 });
    }
    if !(t_max.is_finite() && t_max > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "t_max must be positive and finite, got {t_max}"
        )));
    }
    Ok((0..=steps).map(|k| t_max * k as f64 / steps as f64).collect())
}

/// `⟨ψ(t_k)|S|ψ(t_k)⟩` on `steps + 1` points over `[0, t_max]`.
pub fn evolve_expectation(
    h: &ComplexMatrix,
    s: &ComplexMatrix,
    state: &QuantumState,
    t_max: f64,
    steps: usize,
    hbar: f64,
) -> Result<TimeSeries> {
    let eig = eigendecompose(h, hbar)?;
    evolve_with(&eig, s, state, t_max, steps)
}

/// [`evolve_expectation`] with a precomputed eigendecomposition; `s` and
/// `state` are in the original basis.
pub fn evolve_with(
    eig: &EigenDecomposition,
    s: &ComplexMatrix,
    state: &QuantumState,
    t_max: f64,
    steps: usize,
) -> Result<TimeSeries> {
    eig.check_size(state.size())?;
    let s_eig = eig.to_eigenbasis(s)?;
    let state_eig = state.to_eigenbasis(eig)?;
    evolve_in_eigenbasis(eig, &s_eig, &state_eig, t_max, steps)
}

/// Evolution with observable and state already in the eigenbasis.
pub fn evolve_in_eigenbasis(
    eig: &EigenDecomposition,
    s_eig: &ComplexMatrix,
    state_eig: &QuantumState,
    t_max: f64,
    steps: usize,
) -> Result<TimeSeries> {
    eig.check_size(s_eig.size())?;
    eig.check_size(state_eig.size())?;
    let times = uniform_grid(t_max, steps)?;
    let n = eig.size();
    let omega: Vec<f64> = eig.eigenvalues().iter().map(|l| l / eig.hbar()).collect();
    let mut phases = vec![Complex64::new(0.0, 0.0); n];
    let mut evolved = vec![Complex64::new(0.0, 0.0); n];

    let values = times
        .iter()
        .map(|&t| {
            for (p, w) in phases.iter_mut().zip(&omega) {
                *p = Complex64::from_polar(1.0, -w * t);
            }
            match state_eig {
                QuantumState::Pure(psi) => {
                    for ((e, &c), &p) in evolved.iter_mut().zip(psi.data()).zip(&phases) {
                        *e = c * p;
                    }
                    (0..n)
                        .map(|i| {
                            let row: Complex64 = s_eig.row(i).iter().zip(&evolved).map(|(&a, &b)| a * b).sum();
                            evolved[i].conj() * row
                        })
                        .sum()
                }
                QuantumState::Density(rho) => {
                    // ρ_ji(t) = ρ_ji · e^{-iω_j t} · e^{+iω_i t}
                    let mut acc = Complex64::new(0.0, 0.0);
                    for i in 0..n {
                        let pi = phases[i].conj();
                        let mut row = Complex64::new(0.0, 0.0);
                        for (j, &sij) in s_eig.row(i).iter().enumerate() {
                            row += rho[(j, i)] * phases[j] * sij;
                        }
                        acc += row * pi;
                    }
                    acc
                }
            }
        })
        .collect();
    TimeSeries::new(times, values)
}

/// `Σ_k ½ (f_k + f_{k+1}) Δt_k` with `f_k = values[k] · e^{-a t_k}`.
pub fn trapezoid_weighted_integral(series: &TimeSeries, weight: WeightExponent) -> Result<Complex64> {
    if series.len() < 2 {
        return Err(Error::DegenerateGrid { points: series.len() });
    }
    let a = weight.exponent();
    let mut prev_t = series.times[0];
    let mut prev_f = series.values[0] * (-a * prev_t).exp();
    let mut acc = Complex64::new(0.0, 0.0);
    for (&t, &v) in series.times.iter().zip(&series.values).skip(1) {
        let f = v * (-a * t).exp();
        acc += 0.5 * (prev_f + f) * (t - prev_t);
        prev_t = t;
        prev_f = f;
    }
    Ok(acc)
}
