use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matcore::{eigendecompose, ComplexMatrix, ComplexVector, EigenDecomposition};

/// Tolerance on ‖ψ‖₂ = 1 for pure states.
pub const PURE_NORM_TOL: f64 = 1e-12;
/// Tolerance on Hermiticity, unit trace and positivity of density matrices.
pub const DENSITY_TOL: f64 = 1e-10;

/// A pure state vector or a density matrix.
#[derive(Debug, Clone, PartialEq)]
pub enum QuantumState {
    Pure(ComplexVector),
    Density(ComplexMatrix),
}

impl QuantumState {
    /// Validated pure state; `‖ψ‖₂` must be 1 within `1e-12`.
    pub fn pure(psi: ComplexVector) -> Result<Self> {
        let norm = psi.norm();
        if !((norm - 1.0).abs() <= PURE_NORM_TOL) {
            return Err(Error::InvalidState(format!(
                "state vector norm is {norm}, expected 1 within {PURE_NORM_TOL:e}"
            )));
        }
        Ok(Self::Pure(psi))
    }

    /// Validated density matrix: Hermitian, unit trace, eigenvalues `>= -1e-10`.
    pub fn density(rho: ComplexMatrix) -> Result<Self> {
        let dev = rho.hermitian_deviation();
        if !(dev <= DENSITY_TOL) {
            return Err(Error::InvalidState(format!(
                "density matrix is not Hermitian (deviation {dev:e})"
            )));
        }
        let trace = rho.trace();
        if !((trace - 1.0).norm() <= DENSITY_TOL) {
            return Err(Error::InvalidState(format!(
                "density matrix trace is {trace}, expected 1"
            )));
        }
        let eig = eigendecompose(&rho, 1.0)?;
        let lowest = eig.eigenvalues()[0];
        if lowest < -DENSITY_TOL {
            return Err(Error::InvalidState(format!(
                "density matrix has negative eigenvalue {lowest:e}"
            )));
        }
        Ok(Self::Density(rho))
    }

    pub fn size(&self) -> usize {
        match self {
            Self::Pure(v) => v.size(),
            Self::Density(m) => m.size(),
        }
    }

    /// Same state expressed in the eigenbasis of `eig` (`V†ψ` or `V†ρV`).
    pub fn to_eigenbasis(&self, eig: &EigenDecomposition) -> Result<Self> {
        Ok(match self {
            Self::Pure(v) => Self::Pure(eig.vector_to_eigenbasis(v)?),
            Self::Density(m) => Self::Density(eig.to_eigenbasis(m)?),
        })
    }

    /// `⟨ψ|M|ψ⟩` or `tr(ρ M)`, with `M` and the state in the same basis.
    pub fn expectation_of(&self, m: &ComplexMatrix) -> Result<Complex64> {
        if m.size() != self.size() {
            return Err(Error::DimensionMismatch {
                expected: self.size(),
                found: m.size(),
            });
        }
        let n = m.size();
        Ok(match self {
            Self::Pure(v) => {
                let c = v.data();
                (0..n)
                    .map(|i| {
                        let row: Complex64 = m.row(i).iter().zip(c).map(|(&a, &b)| a * b).sum();
                        c[i].conj() * row
                    })
                    .sum()
            }
            Self::Density(rho) => {
                // tr(ρM) = Σ_ij ρ_ji M_ij
                let mut acc = Complex64::new(0.0, 0.0);
                for i in 0..n {
                    for (j, &mij) in m.row(i).iter().enumerate() {
                        acc += rho[(j, i)] * mij;
                    }
                }
                acc
            }
        })
    }
}
