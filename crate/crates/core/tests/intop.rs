mod common;

use common::*;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use weightint::bench::random_hermitian;
use weightint::evolve::{evolve_expectation, trapezoid_weighted_integral};
use weightint::intop::{
    expectation, phi1, weighted_integral, weighted_integral_with, Horizon, IntegralOperator, QuantumState,
    WeightExponent, SERIES_SWITCH,
};
use weightint::matcore::eigendecompose;
use weightint::{Complex64, ComplexMatrix, ComplexVector, EigenDecomposition, Error};

fn decay(rate: f64) -> WeightExponent {
    WeightExponent::decay(rate).unwrap()
}

#[test]
fn zero_observable_gives_zero_operator() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let h = random_hermitian(5, &mut rng);
    let eig = eigendecompose(&h, 1.0).unwrap();
    let op = IntegralOperator::build(&ComplexMatrix::zeros(5), &eig, decay(0.3)).unwrap();
    for t in [0.0, 1.0, 17.5] {
        assert_eq!(op.evaluate(t).max_abs(), 0.0);
    }
    assert_eq!(op.evaluate_infinite().unwrap().max_abs(), 0.0);
}

#[test]
fn diagonal_system() {
    let h = ComplexMatrix::from_real_diagonal(&[-1.0, 0.5, 2.0]);
    let s = ComplexMatrix::from_real_diagonal(&[1.0, 2.0, -3.0]);
    let eig = eigendecompose(&h, 1.0).unwrap();
    let a = 0.1;
    let op = IntegralOperator::build(&s, &eig, decay(a)).unwrap();
    for i in 0..3 {
        assert_eq!(op.exponents()[(i, i)], c(-a, 0.0));
    }
    let p = op.evaluate(10.0);
    let sd = [1.0, 2.0, -3.0];
    for i in 0..3 {
        let expected = sd[i] * (1.0 - (-a * 10.0f64).exp()) / a;
        assert!((p[(i, i)].re - expected).abs() < 1e-13);
    }
    // s_ii = 1 at a = 0.1, t = 10: (1 - e^{-1}) / 0.1
    assert!((p[(0, 0)].re - 6.3212055883).abs() < 1e-9);
    let inf = op.evaluate_infinite().unwrap();
    for i in 0..3 {
        assert!((inf[(i, i)].re - sd[i] / a).abs() < 1e-13);
    }
}

#[test]
fn matches_direct_entrywise_formula() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let h = random_hermitian(4, &mut rng);
    let s = random_hermitian(4, &mut rng);
    let hbar = 0.7;
    let eig = eigendecompose(&h, hbar).unwrap();
    let w = WeightExponent::new(0.15, 0.4).unwrap();
    let op = IntegralOperator::build(&s, &eig, w).unwrap();
    let s_eig = eig.to_eigenbasis(&s).unwrap();
    let lambda = eig.eigenvalues();
    for t in [0.5, 3.0, 12.0] {
        let p = op.evaluate(t);
        for i in 0..4 {
            for j in 0..4 {
                let expected = direct_entry(s_eig[(i, j)], lambda[i], lambda[j], hbar, w.exponent(), t);
                assert!((p[(i, j)] - expected).norm() <= 1e-12 * expected.norm().max(1e-3));
            }
        }
    }
}

#[test]
fn operator_vanishes_at_zero() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for n in [1, 2, 7, 13] {
        let h = random_hermitian(n, &mut rng);
        let s = random_hermitian(n, &mut rng);
        let eig = eigendecompose(&h, 1.0).unwrap();
        for w in [decay(0.0), decay(0.5), WeightExponent::new(0.2, -3.0).unwrap()] {
            let p = IntegralOperator::build(&s, &eig, w).unwrap().evaluate(0.0);
            assert!(p.data().iter().all(|x| *x == c(0.0, 0.0)));
        }
    }
}

#[test]
fn infinite_horizon_requires_decay() {
    let eig = eigendecompose(&ComplexMatrix::identity(2), 1.0).unwrap();
    let op = IntegralOperator::build(
        &ComplexMatrix::identity(2),
        &eig,
        WeightExponent::new(0.0, 1.0).unwrap(),
    )
    .unwrap();
    assert!(matches!(op.evaluate_infinite(), Err(Error::NonDecayingWeight { rate }) if rate == 0.0));
    let (h, s, psi) = cos_system(1.0);
    assert!(matches!(
        weighted_integral(&h, &s, &psi, decay(0.0), Horizon::Infinite, 1.0),
        Err(Error::NonDecayingWeight { .. })
    ));
}

#[test]
fn infinite_limit_convergence_bound() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..10 {
        let n = rng.random_range(2..10);
        let h = random_hermitian(n, &mut rng);
        let s = random_hermitian(n, &mut rng);
        let eig = eigendecompose(&h, 1.0).unwrap();
        let rate = rng.random_range(0.05..0.5);
        let op = IntegralOperator::build(&s, &eig, decay(rate)).unwrap();
        let inf = op.evaluate_infinite().unwrap();
        let bound = op.tail_bound();
        let mut previous = f64::INFINITY;
        for t in [5.0, 10.0, 20.0, 40.0] {
            let gap = op.evaluate(t).max_abs_diff(&inf).unwrap();
            assert!(gap <= bound * (-rate * t).exp() + 16.0 * f64::EPSILON * bound);
            assert!(gap < previous);
            previous = gap;
        }
    }
}

#[test]
fn expectation_examples() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let h = random_hermitian(4, &mut rng);
    let eig = eigendecompose(&h, 1.0).unwrap();
    let psi = random_pure(4, &mut rng);
    let one = expectation(&ComplexMatrix::identity(4), &psi, &eig).unwrap();
    assert!((one - 1.0).norm() < 1e-14);

    let diag_h = ComplexMatrix::from_real_diagonal(&[0.0, 1.0]);
    let eig2 = eigendecompose(&diag_h, 1.0).unwrap();
    let ground = QuantumState::pure(ComplexVector::basis(2, 0)).unwrap();
    let m = ComplexMatrix::from_real_diagonal(&[0.0, 1.0]);
    assert_eq!(expectation(&m, &ground, &eig2).unwrap(), c(0.0, 0.0));

    // tr(V†ρV · M) by brute-force summation
    let m = random_hermitian(4, &mut rng);
    let rho_state = random_density(4, &mut rng);
    let QuantumState::Density(rho) = &rho_state else {
        unreachable!()
    };
    let v = eig.vectors();
    let mut rho_eig = ComplexMatrix::zeros(4);
    for i in 0..4 {
        for j in 0..4 {
            let mut acc = c(0.0, 0.0);
            for k in 0..4 {
                for l in 0..4 {
                    acc += v[(k, i)].conj() * rho[(k, l)] * v[(l, j)];
                }
            }
            rho_eig[(i, j)] = acc;
        }
    }
    let mut brute = c(0.0, 0.0);
    for i in 0..4 {
        for j in 0..4 {
            brute += rho_eig[(j, i)] * m[(i, j)];
        }
    }
    let got = expectation(&m, &rho_state, &eig).unwrap();
    assert!((got - brute).norm() < 1e-13);
    assert!(matches!(
        expectation(&ComplexMatrix::identity(3), &psi, &eig),
        Err(Error::DimensionMismatch { .. })
    ));
}

#[test]
fn weighted_integral_examples() {
    let h = ComplexMatrix::zeros(2);
    let s = ComplexMatrix::identity(2);
    let psi = random_pure(2, &mut ChaCha8Rng::seed_from_u64(6));
    let v = weighted_integral(&h, &s, &psi, decay(0.5), Horizon::Infinite, 1.0).unwrap();
    assert!((v - 2.0).norm() < 1e-14);

    let (h, s, psi) = cos_system(1.0);
    let a = 0.2;
    let v = weighted_integral(&h, &s, &psi, decay(a), Horizon::Infinite, 1.0).unwrap();
    assert!((v.re - a / (a * a + 1.0)).abs() < 1e-12);
    assert!((v.re - 0.1923076923).abs() < 1e-10);
    assert_eq!(v.im, 0.0);

    for t in [3.0, 20.0] {
        let series = evolve_expectation(&h, &s, &psi, t, 100_000, 1.0).unwrap();
        let quad = trapezoid_weighted_integral(&series, decay(a)).unwrap();
        let v = weighted_integral(&h, &s, &psi, decay(a), Horizon::Finite(t), 1.0).unwrap();
        assert!((v - quad).norm() < 1e-8, "t={t}");
        assert!((v.re - cos_integral(a, 1.0, t)).abs() < 1e-12);
    }
}

#[test]
fn hbar_rescales_frequencies() {
    // H = (ω₀/2)σ_z with ħ = 2 oscillates at ω₀/2.
    let (h, s, psi) = cos_system(1.0);
    let a = 0.3;
    let v = weighted_integral(&h, &s, &psi, decay(a), Horizon::Infinite, 2.0).unwrap();
    assert!((v.re - a / (a * a + 0.25)).abs() < 1e-12);
}

#[test]
fn resonant_fourier_probe_at_finite_time() {
    // a = iω₀ on resonance: z = 0 for one component, handled by the series branch.
    let (h, s, psi) = cos_system(1.0);
    let t = 30.0;
    let v = weighted_integral(
        &h,
        &s,
        &psi,
        WeightExponent::new(0.0, 1.0).unwrap(),
        Horizon::Finite(t),
        1.0,
    )
    .unwrap();
    // ∫ cos(s) e^{-is} ds = t/2 + (1 - e^{-2it})/(4i)
    let expected = c(t / 2.0, 0.0) + (c(1.0, 0.0) - c(0.0, -2.0 * t).exp()) / c(0.0, 4.0);
    assert!((v - expected).norm() < 1e-12);
    let series = evolve_expectation(&h, &s, &psi, t, 100_000, 1.0).unwrap();
    let quad = trapezoid_weighted_integral(&series, WeightExponent::new(0.0, 1.0).unwrap()).unwrap();
    assert!((v - quad).norm() < 1e-6);
}

#[test]
fn oracle_equivalence_small_sample() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..8 {
        let n = rng.random_range(2..8);
        let h = random_hermitian(n, &mut rng);
        let s = random_observable(n, &mut rng);
        let state = random_state(n, &mut rng);
        let w = WeightExponent::new(rng.random_range(0.01..1.0), rng.random_range(-1.0..1.0)).unwrap();
        let t = rng.random_range(1.0..30.0);
        let v = weighted_integral(&h, &s, &state, w, Horizon::Finite(t), 1.0).unwrap();
        let series = evolve_expectation(&h, &s, &state, t, 100_000, 1.0).unwrap();
        let quad = trapezoid_weighted_integral(&series, w).unwrap();
        assert!((v - quad).norm() <= 1e-5 * (1.0 + v.norm()));
    }
}

#[test]
fn derivative_matches_integrand() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..5 {
        let n = 4;
        let h = random_hermitian(n, &mut rng);
        let s = random_observable(n, &mut rng);
        let state = random_state(n, &mut rng);
        let eig = eigendecompose(&h, 1.0).unwrap();
        let w = decay(rng.random_range(0.05..0.5));
        let op = IntegralOperator::build(&s, &eig, w).unwrap();
        let t = rng.random_range(1.0..8.0);
        let at = |t: f64| expectation(&op.evaluate(t), &state, &eig).unwrap();
        let series = evolve_expectation(&h, &s, &state, t, 1, 1.0).unwrap();
        let exact = series.values()[1] * w.factor(t);
        let err = |dt: f64| ((at(t + dt) - at(t - dt)) / (2.0 * dt) - exact).norm();
        let ratio = err(0.04) / err(0.02);
        assert!((ratio - 4.0).abs() < 0.8, "ratio {ratio}");
    }
}

#[test]
fn basis_choice_within_degenerate_subspace() {
    // H = U diag(-1, 0.5, 0.5, 0.5, 2) U† with a random unitary U.
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let seed_h = random_hermitian(5, &mut rng);
    let u = eigendecompose(&seed_h, 1.0).unwrap().vectors().clone();
    let lambda = [-1.0, 0.5, 0.5, 0.5, 2.0];
    let h = u
        .matmul(&ComplexMatrix::from_real_diagonal(&lambda))
        .unwrap()
        .matmul(&u.adjoint())
        .unwrap();
    let mut h = h;
    for i in 0..5 {
        h[(i, i)] = c(h[(i, i)].re, 0.0);
        for j in (i + 1)..5 {
            h[(j, i)] = h[(i, j)].conj();
        }
    }
    let eig = eigendecompose(&h, 1.0).unwrap();
    let degenerate: Vec<usize> = (0..5).filter(|&k| (eig.eigenvalues()[k] - 0.5).abs() < 1e-9).collect();
    assert_eq!(degenerate, vec![1, 2, 3]);

    // rotate the degenerate columns by a random 3×3 unitary
    let rot = eigendecompose(&random_hermitian(3, &mut rng), 1.0)
        .unwrap()
        .vectors()
        .clone();
    let v = eig.vectors();
    let mut v2 = v.clone();
    for row in 0..5 {
        for (b, &col) in degenerate.iter().enumerate() {
            v2[(row, col)] = degenerate
                .iter()
                .enumerate()
                .map(|(a, &src)| v[(row, src)] * rot[(a, b)])
                .sum();
        }
    }
    let eig2 = EigenDecomposition::new(eig.eigenvalues().to_vec(), v2, 1.0).unwrap();
    assert!(eig2.vectors().max_abs_diff(eig.vectors()).unwrap() > 1e-3);

    let s = random_observable(5, &mut rng);
    let state = random_state(5, &mut rng);
    for (w, horizon) in [
        (decay(0.2), Horizon::Finite(7.0)),
        (decay(0.2), Horizon::Infinite),
        (WeightExponent::new(0.1, 1.3).unwrap(), Horizon::Infinite),
    ] {
        let a = weighted_integral_with(&eig, &s, &state, w, horizon).unwrap();
        let b = weighted_integral_with(&eig2, &s, &state, w, horizon).unwrap();
        assert!((a - b).norm() <= 1e-10, "{a} vs {b}");
    }
}

#[test]
fn linear_in_observable() {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let n = 6;
    let h = random_hermitian(n, &mut rng);
    let s1 = random_observable(n, &mut rng);
    let s2 = random_observable(n, &mut rng);
    let state = random_state(n, &mut rng);
    let (alpha, beta) = (c(1.7, 0.0), c(-0.4, 0.0));
    let w = WeightExponent::new(0.3, 0.8).unwrap();
    let combo = s1.scale(alpha).add(&s2.scale(beta)).unwrap();
    for horizon in [Horizon::Finite(4.0), Horizon::Infinite] {
        let i1 = weighted_integral(&h, &s1, &state, w, horizon, 1.0).unwrap();
        let i2 = weighted_integral(&h, &s2, &state, w, horizon, 1.0).unwrap();
        let ic = weighted_integral(&h, &combo, &state, w, horizon, 1.0).unwrap();
        assert!((ic - (alpha * i1 + beta * i2)).norm() <= 1e-12 * (1.0 + ic.norm()));
    }
}

fn random_system(seed: u64, n: usize) -> (EigenDecomposition, ComplexMatrix) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let h = random_hermitian(n, &mut rng);
    let s = random_observable(n, &mut rng);
    (eigendecompose(&h, 1.0).unwrap(), s)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn real_weight_gives_hermitian_operator(seed in any::<u64>(), n in 1usize..12, rate in 0.0f64..2.0, t in 0.0f64..60.0) {
        let (eig, s) = random_system(seed, n);
        let op = IntegralOperator::build(&s, &eig, decay(rate)).unwrap();
        let p = op.evaluate(t);
        prop_assert!(p.hermitian_deviation() <= 1e-12 * (1.0 + p.max_abs()));
        if rate > 0.0 {
            let inf = op.evaluate_infinite().unwrap();
            prop_assert!(inf.hermitian_deviation() <= 1e-12 * (1.0 + inf.max_abs()));
        }
    }

    #[test]
    fn exponent_table_symmetry(seed in any::<u64>(), n in 1usize..10, rate in 0.0f64..2.0, freq in -3.0f64..3.0) {
        let (eig, s) = random_system(seed, n);
        let op = IntegralOperator::build(&s, &eig, WeightExponent::new(rate, freq).unwrap()).unwrap();
        let z = op.exponents();
        let a = Complex64::new(rate, freq);
        for i in 0..n {
            for j in 0..n {
                // z_ij + a = -(z_ji + a)
                prop_assert!(((z[(i, j)] + a) + (z[(j, i)] + a)).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn phi1_is_continuous_across_switch(re in -1.0f64..1.0, im in -1.0f64..1.0, t in 0.1f64..10.0) {
        let dir = Complex64::new(re, im);
        prop_assume!(dir.norm() > 1e-3);
        let unit = dir / dir.norm();
        let below = unit * (SERIES_SWITCH * (1.0 - 1e-12) / t);
        let above = unit * (SERIES_SWITCH * (1.0 + 1e-12) / t);
        let a = phi1(below, t);
        let b = phi1(above, t);
        prop_assert!((a - b).norm() / b.norm() < 1e-13);
    }
}
