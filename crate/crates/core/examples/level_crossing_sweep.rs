// Avoided-level-crossing scan: muon polarization time-averaged over the muon
// lifetime, as a function of longitudinal field, for a muon–electron–proton
// radical with isotropic hyperfine couplings. Near the field where the
// muon–proton flip-flop levels cross, polarization is transferred to the
// proton and the average dips.
//
// Units: angular frequencies in rad/µs, time in µs, field in T, ħ = 1.
//
// ```bash
// cargo run -p weightint --example level_crossing_sweep
// ```

use std::error::Error;
use std::f64::consts::PI;
use std::io::{self, Write};

use weightint::apps::sweep;
use weightint::intop::{QuantumState, WeightExponent};
use weightint::{Complex64, ComplexMatrix};

const GAMMA_E: f64 = 2.0 * PI * 28_024.951; // rad/µs/T
const GAMMA_MU: f64 = 2.0 * PI * 135.538_81;
const GAMMA_P: f64 = 2.0 * PI * 42.577_478;
const A_MU: f64 = 2.0 * PI * 300.0; // rad/µs
const A_P: f64 = 2.0 * PI * 100.0;
const MUON_LIFETIME: f64 = 2.196_981; // µs

fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let (na, nb) = (a.size(), b.size());
    let mut out = ComplexMatrix::zeros(na * nb);
    for i in 0..na {
        for j in 0..na {
            for k in 0..nb {
                for l in 0..nb {
                    out[(i * nb + k, j * nb + l)] = a[(i, j)] * b[(k, l)];
                }
            }
        }
    }
    out
}

/// Spin-1/2 operators `[Sx, Sy, Sz]`.
fn spin_half() -> [ComplexMatrix; 3] {
    let c = Complex64::new;
    let (zero, half) = (c(0.0, 0.0), c(0.5, 0.0));
    let sx = ComplexMatrix::from_rows(vec![vec![zero, half], vec![half, zero]]).expect("2×2");
    let sy = ComplexMatrix::from_rows(vec![vec![zero, c(0.0, -0.5)], vec![c(0.0, 0.5), zero]]).expect("2×2");
    [sx, sy, ComplexMatrix::from_real_diagonal(&[0.5, -0.5])]
}

/// Operator `op` acting on spin `slot` of (muon, electron, proton).
fn embed(op: &ComplexMatrix, slot: usize) -> ComplexMatrix {
    let id = ComplexMatrix::identity(2);
    let parts: [&ComplexMatrix; 3] = match slot {
        0 => [op, &id, &id],
        1 => [&id, op, &id],
        _ => [&id, &id, op],
    };
    kron(&kron(parts[0], parts[1]), parts[2])
}

fn hamiltonian(field: f64) -> Result<ComplexMatrix, Box<dyn Error>> {
    let s = spin_half();
    let mu: Vec<_> = s.iter().map(|o| embed(o, 0)).collect();
    let el: Vec<_> = s.iter().map(|o| embed(o, 1)).collect();
    let pr: Vec<_> = s.iter().map(|o| embed(o, 2)).collect();
    let c = |x: f64| Complex64::new(x, 0.0);

    let mut h = el[2].scale(c(GAMMA_E * field));
    h = h.sub(&mu[2].scale(c(GAMMA_MU * field)))?;
    h = h.sub(&pr[2].scale(c(GAMMA_P * field)))?;
    for k in 0..3 {
        h = h.add(&mu[k].matmul(&el[k])?.scale(c(A_MU)))?;
        h = h.add(&pr[k].matmul(&el[k])?.scale(c(A_P)))?;
    }
    Ok(h)
}

pub fn run_example(out: &mut dyn Write) -> Result<(), Box<dyn Error>> {
    let resonance = (A_MU - A_P) / (2.0 * (GAMMA_MU - GAMMA_P)) - (A_MU + A_P) / (2.0 * GAMMA_E);

    // Muon polarized along the field, electron and proton unpolarized.
    let sz = &spin_half()[2];
    let muon_pz = embed(sz, 0).scale(Complex64::new(2.0, 0.0));
    let rho = ComplexMatrix::identity(8)
        .add(&muon_pz)?
        .scale(Complex64::new(1.0 / 8.0, 0.0));
    let state = QuantumState::density(rho)?;

    let fields: Vec<f64> = (0..=40).map(|k| resonance - 0.02 + 0.001 * k as f64).collect();
    let hamiltonians = fields
        .iter()
        .map(|&b| Ok((b, hamiltonian(b)?)))
        .collect::<Result<Vec<_>, Box<dyn Error>>>()?;

    // Average polarization = ∫⟨Pz⟩e^{-t/τ}dt / τ.
    let weight = WeightExponent::from_tau(MUON_LIFETIME)?;
    let scan = sweep(&hamiltonians, &muon_pz, &state, weight, 1.0)?;
    let values = scan.into_values().map_err(|(b, e)| format!("B = {b}: {e}"))?;

    writeln!(out, "expected crossing near B = {resonance:.5} T")?;
    writeln!(out, "{:>10} {:>12}", "B (T)", "<Pz>")?;
    let mut dip = (f64::NAN, f64::INFINITY);
    for (&b, v) in fields.iter().zip(&values) {
        let pz = v.re / MUON_LIFETIME;
        writeln!(out, "{b:>10.5} {pz:>12.6}")?;
        if pz < dip.1 {
            dip = (b, pz);
        }
    }
    writeln!(out, "minimum {:.6} at B = {:.5} T", dip.1, dip.0)?;
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example(&mut io::stdout())
}
