#![allow(dead_code)]

use rand::Rng;
use weightint::bench::random_hermitian;
use weightint::intop::QuantumState;
use weightint::{Complex64, ComplexMatrix, ComplexVector};

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn random_pure<R: Rng>(n: usize, rng: &mut R) -> QuantumState {
    let v: Vec<Complex64> = (0..n)
        .map(|_| c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
        .collect();
    QuantumState::pure(ComplexVector::new(v).unwrap().normalized().unwrap()).unwrap()
}

/// `A A† / tr(A A†)`, full rank almost surely.
pub fn random_density<R: Rng>(n: usize, rng: &mut R) -> QuantumState {
    let mut a = ComplexMatrix::zeros(n);
    for i in 0..n {
        for j in 0..n {
            a[(i, j)] = c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
        }
    }
    let aah = a.matmul(&a.adjoint()).unwrap();
    let tr = aah.trace().re;
    let mut rho = aah.scale(c(1.0 / tr, 0.0));
    // exact Hermiticity after rounding
    for i in 0..n {
        rho[(i, i)] = c(rho[(i, i)].re, 0.0);
        for j in (i + 1)..n {
            rho[(j, i)] = rho[(i, j)].conj();
        }
    }
    QuantumState::density(rho).unwrap()
}

pub fn random_state<R: Rng>(n: usize, rng: &mut R) -> QuantumState {
    if rng.random_bool(0.5) {
        random_pure(n, rng)
    } else {
        random_density(n, rng)
    }
}

pub fn random_observable<R: Rng>(n: usize, rng: &mut R) -> ComplexMatrix {
    random_hermitian(n, rng)
}

/// Two-level system with ⟨S⟩(t) = cos(ω₀ t): H = (ω₀/2)σ_z, S = σ_x, ψ = |+x⟩.
pub fn cos_system(omega0: f64) -> (ComplexMatrix, ComplexMatrix, QuantumState) {
    let h = ComplexMatrix::from_real_diagonal(&[omega0 / 2.0, -omega0 / 2.0]);
    let s = ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]]).unwrap();
    let r = std::f64::consts::FRAC_1_SQRT_2;
    let psi = QuantumState::pure(ComplexVector::from_real(&[r, r]).unwrap()).unwrap();
    (h, s, psi)
}

/// Closed-form `∫_0^t cos(ω s) e^{-a s} ds`.
pub fn cos_integral(a: f64, omega: f64, t: f64) -> f64 {
    let e = (-a * t).exp();
    (a + e * (omega * (omega * t).sin() - a * (omega * t).cos())) / (a * a + omega * omega)
}

/// One entry of the integral operator written out directly with the complex
/// exponential: `s/(i(λi-λj)/ħ - a) · (e^{-at + i(λi-λj)t/ħ} - 1)`.
pub fn direct_entry(s: Complex64, li: f64, lj: f64, hbar: f64, a: Complex64, t: f64) -> Complex64 {
    let denom = c(0.0, (li - lj) / hbar) - a;
    s / denom * ((-a * t + c(0.0, (li - lj) * t / hbar)).exp() - 1.0)
}

pub fn rel_err(value: Complex64, reference: Complex64) -> f64 {
    (value - reference).norm() / reference.norm().max(f64::MIN_POSITIVE)
}
