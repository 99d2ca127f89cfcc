//! The closed-form integral operator and the weighted-integral entry point.

mod kernel;
mod operator;
mod state;
mod weight;

pub use kernel::{exp_m1, phi1, SERIES_SWITCH};
pub use operator::{expectation, IntegralOperator};
pub use state::{QuantumState, DENSITY_TOL, PURE_NORM_TOL};
pub use weight::{Horizon, WeightExponent};

use num_complex::Complex64;

use crate::error::Result;
use crate::matcore::{eigendecompose, ComplexMatrix, EigenDecomposition, HERMITIAN_RTOL};

/// `∫_0^t ⟨ψ(t')|S|ψ(t')⟩ e^{-a t'} dt'` for a time-independent `H`.
///
/// When the weight is real (`frequency == 0`) and `s` is Hermitian the result
/// is real up to rounding; the imaginary part is then dropped and the real
/// value is returned with `im = 0`.
pub fn weighted_integral(
    h: &ComplexMatrix,
    s: &ComplexMatrix,
    state: &QuantumState,
    weight: WeightExponent,
    horizon: Horizon,
    hbar: f64,
) -> Result<Complex64> {
    let eig = eigendecompose(h, hbar)?;
    weighted_integral_with(&eig, s, state, weight, horizon)
}

/// [`weighted_integral`] with a precomputed eigendecomposition.
pub fn weighted_integral_with(
    eig: &EigenDecomposition,
    s: &ComplexMatrix,
    state: &QuantumState,
    weight: WeightExponent,
    horizon: Horizon,
) -> Result<Complex64> {
    let op = IntegralOperator::build(s, eig, weight)?;
    let p = op.evaluate_at(horizon)?;
    let value = expectation(&p, state, eig)?;
    Ok(physical_value(value, s, weight))
}

fn physical_value(value: Complex64, s: &ComplexMatrix, weight: WeightExponent) -> Complex64 {
    if weight.frequency() == 0.0 && s.is_hermitian(HERMITIAN_RTOL * s.frobenius_norm()) {
        Complex64::new(value.re, 0.0)
    } else {
        value
    }
}
