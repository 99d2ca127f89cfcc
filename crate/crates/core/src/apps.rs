//! Applications built on the integral operator: normalized weighted time
//! averages, damped Fourier probing at chosen frequencies, and sweeps over a
//! family of Hamiltonians `H(B)` at infinite horizon.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::intop::{expectation, weighted_integral, Horizon, IntegralOperator, QuantumState, WeightExponent};
use crate::matcore::{eigendecompose, ComplexMatrix};

/// Integral values for an ordered list of parameter labels.
///
/// Each point carries its own result, so one failing Hamiltonian does not
/// hide the others.
#[derive(Debug, Clone)]
pub struct SweepResult {
    pub labels: Vec<f64>,
    pub values: Vec<Result<Complex64>>,
}

impl SweepResult {
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn failures(&self) -> impl Iterator<Item = (f64, &Error)> {
        self.labels
            .iter()
            .zip(&self.values)
            .filter_map(|(&l, v)| v.as_ref().err().map(|e| (l, e)))
    }

    /// All values, or the first failure together with its label.
    pub fn into_values(self) -> std::result::Result<Vec<Complex64>, (f64, Error)> {
        self.labels
            .into_iter()
            .zip(self.values)
            .map(|(l, v)| v.map_err(|e| (l, e)))
            .collect()
    }
}

/// Damped Fourier amplitudes at the requested angular frequencies.
#[derive(Debug, Clone, PartialEq)]
pub struct FourierProbe {
    pub tau: f64,
    pub omegas: Vec<f64>,
    pub values: Vec<Complex64>,
}

/// `∫_0^t ⟨S⟩ e^{-t'/τ} dt' / ∫_0^t e^{-t'/τ} dt'`.
///
/// At `t = 0` the ratio is taken in its limit `⟨S⟩(0)`.
pub fn weighted_average(
    h: &ComplexMatrix,
    s: &ComplexMatrix,
    state: &QuantumState,
    tau: f64,
    horizon: Horizon,
    hbar: f64,
) -> Result<f64> {
    let weight = WeightExponent::from_tau(tau)?;
    let denominator = match horizon {
        Horizon::Infinite => tau,
        Horizon::Finite(0.0) => {
            let eig = eigendecompose(h, hbar)?;
            let s_eig = eig.to_eigenbasis(s)?;
            return Ok(expectation(&s_eig, state, &eig)?.re);
        }
        Horizon::Finite(t) => -tau * (-t / tau).exp_m1(),
    };
    let integral = weighted_integral(h, s, state, weight, horizon, hbar)?;
    Ok(integral.re / denominator)
}

/// Damped Fourier amplitude `∫_0^∞ ⟨S⟩(t) e^{-t/τ} e^{-iωt} dt` at each `ω`.
///
/// The Hamiltonian is diagonalized once; frequencies are evaluated in
/// parallel and returned in input order.
pub fn fourier_probe(
    h: &ComplexMatrix,
    s: &ComplexMatrix,
    state: &QuantumState,
    tau: f64,
    omegas: &[f64],
    hbar: f64,
) -> Result<FourierProbe> {
    let base = WeightExponent::from_tau(tau)?;
    let eig = eigendecompose(h, hbar)?;
    eig.check_size(state.size())?;
    let op = IntegralOperator::build(s, &eig, base)?;
    let state_eig = state.to_eigenbasis(&eig)?;
    let values = omegas
        .par_iter()
        .map(|&omega| {
            let probe = op.with_weight(base.with_frequency(omega)?);
            state_eig.expectation_of(&probe.evaluate_infinite()?)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(FourierProbe {
        tau,
        omegas: omegas.to_vec(),
        values,
    })
}

/// Infinite-horizon weighted integral for each labelled Hamiltonian.
///
/// Points are independent and evaluated in parallel; output order follows
/// input order and every point goes through [`weighted_integral`].
pub fn sweep(
    hamiltonians: &[(f64, ComplexMatrix)],
    s: &ComplexMatrix,
    state: &QuantumState,
    weight: WeightExponent,
    hbar: f64,
) -> Result<SweepResult> {
    if !(weight.rate() > 0.0) {
        return Err(Error::NonDecayingWeight { rate: weight.rate() });
    }
    let values = hamiltonians
        .par_iter()
        .map(|(_, h)| {
            if h.size() != s.size() {
                return Err(Error::DimensionMismatch {
                    expected: s.size(),
                    found: h.size(),
                });
            }
            weighted_integral(h, s, state, weight, Horizon::Infinite, hbar)
        })
        .collect();
    Ok(SweepResult {
        labels: hamiltonians.iter().map(|(l, _)| *l).collect(),
        values,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matcore::ComplexVector;

    fn cos_system() -> (ComplexMatrix, ComplexMatrix, QuantumState) {
        let h = ComplexMatrix::from_real_rows(&[&[0.5, 0.0], &[0.0, -0.5]]).unwrap();
        let s = ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]]).unwrap();
        let r = std::f64::consts::FRAC_1_SQRT_2;
        let psi = QuantumState::pure(ComplexVector::from_real(&[r, r]).unwrap()).unwrap();
        (h, s, psi)
    }

    #[test]
    fn average_of_constant() {
        let (h, _, psi) = cos_system();
        let s = ComplexMatrix::identity(2).scale(Complex64::new(3.5, 0.0));
        for horizon in [
            Horizon::Finite(0.0),
            Horizon::Finite(0.3),
            Horizon::Finite(40.0),
            Horizon::Infinite,
        ] {
            for tau in [0.5, 10.0] {
                let v = weighted_average(&h, &s, &psi, tau, horizon, 1.0).unwrap();
                assert!((v - 3.5).abs() < 1e-12, "{horizon} {tau}: {v}");
            }
        }
        let zero = weighted_average(&h, &ComplexMatrix::zeros(2), &psi, 10.0, Horizon::Infinite, 1.0).unwrap();
        assert_eq!(zero, 0.0);
    }

    #[test]
    fn average_of_cos() {
        let (h, s, psi) = cos_system();
        let v = weighted_average(&h, &s, &psi, 5.0, Horizon::Infinite, 1.0).unwrap();
        let a = 0.2;
        assert!((v - a / (a * a + 1.0) / 5.0).abs() < 1e-12);
        assert!((v - 0.0384615385).abs() < 1e-10);
    }

    #[test]
    fn fourier_of_constant() {
        let h = ComplexMatrix::zeros(3);
        let s = ComplexMatrix::identity(3);
        let psi = QuantumState::pure(ComplexVector::basis(3, 2)).unwrap();
        let omegas = [-2.0, -0.1, 0.0, 0.7, 5.0];
        let probe = fourier_probe(&h, &s, &psi, 4.0, &omegas, 1.0).unwrap();
        assert_eq!(probe.omegas, omegas);
        for (&w, v) in omegas.iter().zip(&probe.values) {
            let expected = 1.0 / Complex64::new(0.25, w);
            assert!((v - expected).norm() < 1e-14);
        }
    }

    #[test]
    fn fourier_of_cos_is_lorentzian() {
        // ∫ cos(t) e^{-t/τ} e^{-iωt} dt = ½[1/(γ + i(ω-1)) + 1/(γ + i(ω+1))]
        let (h, s, psi) = cos_system();
        let tau = 20.0;
        let g = 1.0 / tau;
        let omegas: Vec<f64> = (0..=400).map(|k| -2.0 + 0.01 * k as f64).collect();
        let probe = fourier_probe(&h, &s, &psi, tau, &omegas, 1.0).unwrap();
        for (&w, v) in omegas.iter().zip(&probe.values) {
            let expected = 0.5 * (1.0 / Complex64::new(g, w - 1.0) + 1.0 / Complex64::new(g, w + 1.0));
            assert!((v - expected).norm() < 1e-12);
        }
        let peak = omegas
            .iter()
            .zip(&probe.values)
            .max_by(|a, b| a.1.norm().total_cmp(&b.1.norm()))
            .unwrap();
        assert!((peak.0.abs() - 1.0).abs() < 1e-9);
        // with the counter-rotating term removed, |value|² halves at ω₀ ± γ
        let resonant = |w: f64| {
            let v = fourier_probe(&h, &s, &psi, tau, &[w], 1.0).unwrap().values[0];
            (v - 0.5 / Complex64::new(g, w + 1.0)).norm_sqr()
        };
        let ratio = resonant(1.0 + g) / resonant(1.0);
        assert!((ratio - 0.5).abs() < 1e-9, "{ratio}");
    }

    #[test]
    fn fourier_conjugate_symmetry() {
        let h = ComplexMatrix::from_real_rows(&[&[0.3, 0.2, -0.1], &[0.2, -0.4, 0.25], &[-0.1, 0.25, 0.1]]).unwrap();
        let s = ComplexMatrix::from_real_diagonal(&[0.0, 1.0, 2.0]);
        let psi = QuantumState::pure(ComplexVector::from_real(&[0.6, 0.0, 0.8]).unwrap()).unwrap();
        let probe = fourier_probe(&h, &s, &psi, 7.0, &[0.35, -0.35], 1.0).unwrap();
        assert!((probe.values[0] - probe.values[1].conj()).norm() < 1e-12);
    }

    #[test]
    fn sweep_lorentzian() {
        let s = ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]]).unwrap();
        let r = std::f64::consts::FRAC_1_SQRT_2;
        let plus_x = QuantumState::pure(ComplexVector::from_real(&[r, r]).unwrap()).unwrap();
        let a = 0.3;
        let hbar = 1.0;
        let family: Vec<(f64, ComplexMatrix)> = (0..11)
            .map(|k| {
                let b = -1.0 + 0.2 * k as f64;
                (b, ComplexMatrix::from_real_diagonal(&[b, -b]))
            })
            .collect();
        let result = sweep(&family, &s, &plus_x, WeightExponent::decay(a).unwrap(), hbar).unwrap();
        assert_eq!(result.len(), 11);
        for ((&b, v), (b_in, h)) in result.labels.iter().zip(&result.values).zip(&family) {
            assert_eq!(b, *b_in);
            let v = *v.as_ref().unwrap();
            let w = 2.0 * b / hbar;
            assert!((v.re - a / (a * a + w * w)).abs() < 1e-12, "B={b}");
            let direct = weighted_integral(
                h,
                &s,
                &plus_x,
                WeightExponent::decay(a).unwrap(),
                Horizon::Infinite,
                hbar,
            )
            .unwrap();
            assert_eq!(v, direct);
        }
    }

    #[test]
    fn sweep_reports_failures_per_point() {
        let s = ComplexMatrix::identity(2);
        let psi = QuantumState::pure(ComplexVector::basis(2, 0)).unwrap();
        let good = ComplexMatrix::from_real_diagonal(&[1.0, -1.0]);
        let bad = ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[0.0, 0.0]]).unwrap();
        let family = vec![
            (0.0, good.clone()),
            (1.0, bad),
            (2.0, ComplexMatrix::identity(3)),
            (3.0, good),
        ];
        let w = WeightExponent::decay(0.5).unwrap();
        let result = sweep(&family, &s, &psi, w, 1.0).unwrap();
        let failures: Vec<f64> = result.failures().map(|(l, _)| l).collect();
        assert_eq!(failures, vec![1.0, 2.0]);
        assert!((result.values[0].as_ref().unwrap().re - 2.0).abs() < 1e-14);
        assert!((result.values[3].as_ref().unwrap().re - 2.0).abs() < 1e-14);
        assert!(matches!(
            sweep(&family, &s, &psi, WeightExponent::decay(0.0).unwrap(), 1.0),
            Err(Error::NonDecayingWeight { .. })
        ));
    }
}
