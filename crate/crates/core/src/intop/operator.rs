use num_complex::Complex64;

use super::kernel::phi1;
use super::state::QuantumState;
use super::weight::{Horizon, WeightExponent};
use crate::error::{Error, Result};
use crate::matcore::{ComplexMatrix, EigenDecomposition};

/// Closed-form integral operator `P(t)`, stored in the eigenbasis of `H`.
///
/// Building costs one basis change of the observable (O(N³)); every
/// evaluation afterwards is O(N²).
#[derive(Debug, Clone)]
pub struct IntegralOperator {
    s_eig: ComplexMatrix,
    eig: EigenDecomposition,
    weight: WeightExponent,
    z: ComplexMatrix,
}

impl IntegralOperator {
    /// `s` is given in the original basis.
    pub fn build(s: &ComplexMatrix, eig: &EigenDecomposition, weight: WeightExponent) -> Result<Self> {
        let s_eig = eig.to_eigenbasis(s)?;
        Ok(Self::from_eigenbasis_parts(s_eig, eig.clone(), weight))
    }

    fn from_eigenbasis_parts(s_eig: ComplexMatrix, eig: EigenDecomposition, weight: WeightExponent) -> Self {
        let n = eig.size();
        let a = weight.exponent();
        let lambda = eig.eigenvalues();
        let hbar = eig.hbar();
        let mut z = ComplexMatrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                z[(i, j)] = Complex64::new(0.0, (lambda[i] - lambda[j]) / hbar) - a;
            }
        }
        Self { s_eig, eig, weight, z }
    }

    /// Same observable and Hamiltonian under a different weight.
    pub fn with_weight(&self, weight: WeightExponent) -> Self {
        Self::from_eigenbasis_parts(self.s_eig.clone(), self.eig.clone(), weight)
    }

    pub fn size(&self) -> usize {
        self.eig.size()
    }

    pub fn weight(&self) -> WeightExponent {
        self.weight
    }

    pub fn eigen(&self) -> &EigenDecomposition {
        &self.eig
    }

    /// Observable in the eigenbasis.
    pub fn observable(&self) -> &ComplexMatrix {
        &self.s_eig
    }

    /// Exponent table `z_ij = i(λ_i - λ_j)/ħ - a`.
    pub fn exponents(&self) -> &ComplexMatrix {
        &self.z
    }

    /// `P(t)` in the eigenbasis: `p_ij = s_ij · phi1(z_ij, t)`.
    ///
    /// # Panics
    ///
    /// If `t` is negative or not finite.
    pub fn evaluate(&self, t: f64) -> ComplexMatrix {
        let n = self.size();
        let data = self
            .s_eig
            .data()
            .iter()
            .zip(self.z.data())
            .map(|(&s, &z)| {
                if s == Complex64::new(0.0, 0.0) {
                    s
                } else {
                    s * phi1(z, t)
                }
            })
            .collect();
        ComplexMatrix::new(n, data).expect("size preserved")
    }

    /// `P(∞)` in the eigenbasis: `p_ij = -s_ij / z_ij`. Needs `rate > 0`.
    pub fn evaluate_infinite(&self) -> Result<ComplexMatrix> {
        if !(self.weight.rate() > 0.0) {
            return Err(Error::NonDecayingWeight {
                rate: self.weight.rate(),
            });
        }
        let n = self.size();
        let data = self
            .s_eig
            .data()
            .iter()
            .zip(self.z.data())
            .map(|(&s, &z)| -s / z)
            .collect();
        Ok(ComplexMatrix::new(n, data).expect("size preserved"))
    }

    pub fn evaluate_at(&self, horizon: Horizon) -> Result<ComplexMatrix> {
        match horizon {
            Horizon::Finite(t) => {
                if !(t.is_finite() && t >= 0.0) {
                    return Err(Error::InvalidArgument(format!("time must be finite and >= 0, got {t}")));
                }
                Ok(self.evaluate(t))
            }
            Horizon::Infinite => self.evaluate_infinite(),
        }
    }

    /// `max_ij |s_ij / z_ij|`, the prefactor of the `e^{-rate·t}` tail.
    pub fn tail_bound(&self) -> f64 {
        self.s_eig
            .data()
            .iter()
            .zip(self.z.data())
            .filter(|(s, _)| s.norm() > 0.0)
            .map(|(&s, &z)| (s / z).norm())
            .fold(0.0, f64::max)
    }
}

/// Expectation of an eigenbasis matrix in a state given in the original basis.
///
/// The state is transformed on every call; callers evaluating many matrices
/// against one state can transform once with [`QuantumState::to_eigenbasis`]
/// and use [`QuantumState::expectation_of`].
pub fn expectation(m: &ComplexMatrix, state: &QuantumState, eig: &EigenDecomposition) -> Result<Complex64> {
    eig.check_size(m.size())?;
    eig.check_size(state.size())?;
    state.to_eigenbasis(eig)?.expectation_of(m)
}
