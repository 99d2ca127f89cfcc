// Damped Fourier spectrum of a random 4-level system evaluated directly at
// chosen frequencies, compared with the FFT of the sampled, damped signal.
// The probe needs no time grid, so it can resolve a line far more finely
// than the FFT bin spacing.
//
// ```bash
// cargo run -p weightint --example fourier_window
// ```

use std::error::Error;
use std::f64::consts::PI;
use std::io::{self, Write};

use rustfft::FftPlanner;
use weightint::apps::fourier_probe;
use weightint::bench::{bench_rng, highest_state, number_operator, random_hermitian};
use weightint::evolve::evolve_expectation;
use weightint::intop::WeightExponent;
use weightint::matcore::eigendecompose;

pub fn run_example(out: &mut dyn Write) -> Result<(), Box<dyn Error>> {
    const N: usize = 4;
    const TAU: f64 = 50.0;
    const SAMPLES: usize = 1000;
    const DT: f64 = 0.5;
    let bin = 2.0 * PI / (SAMPLES as f64 * DT);

    let mut rng = bench_rng(505);
    let h = random_hermitian(N, &mut rng);
    let s = number_operator(N);
    let state = highest_state(N);
    let weight = WeightExponent::from_tau(TAU)?;

    let levels = eigendecompose(&h, 1.0)?.eigenvalues().to_vec();
    write!(out, "transition frequencies:")?;
    for i in 0..N {
        for j in 0..i {
            write!(out, " {:.4}", levels[i] - levels[j])?;
        }
    }
    writeln!(out)?;

    // FFT of the damped signal sampled every DT.
    let signal = evolve_expectation(&h, &s, &state, DT * (SAMPLES - 1) as f64, SAMPLES - 1, 1.0)?;
    let mut buffer: Vec<_> = signal
        .times()
        .iter()
        .zip(signal.values())
        .map(|(&t, v)| {
            let x = v * weight.factor(t);
            rustfft::num_complex::Complex64::new(x.re, x.im)
        })
        .collect();
    FftPlanner::new().plan_fft_forward(SAMPLES).process(&mut buffer);
    let spectrum: Vec<f64> = buffer.iter().map(|x| x.norm() * DT).collect();
    let strongest = (1..SAMPLES / 2)
        .filter(|&k| spectrum[k] > spectrum[k - 1] && spectrum[k] > spectrum[k + 1])
        .max_by(|&a, &b| spectrum[a].total_cmp(&spectrum[b]))
        .ok_or("no spectral line")?;
    writeln!(
        out,
        "strongest FFT line: ω = {:.4} (bin width {bin:.4})",
        strongest as f64 * bin
    )?;

    // Probe a window of ±2 bins around it at 1/10-bin resolution.
    let centre = strongest as f64 * bin;
    let omegas: Vec<f64> = (0..=40).map(|j| centre + bin * (j as f64 / 10.0 - 2.0)).collect();
    let probe = fourier_probe(&h, &s, &state, TAU, &omegas, 1.0)?;
    writeln!(out, "{:>10} {:>14} {:>14}", "omega", "|probe|", "|FFT| nearest")?;
    let mut best = (0.0, 0.0);
    for (&omega, value) in omegas.iter().zip(&probe.values) {
        let k = (omega / bin).round() as usize;
        writeln!(out, "{omega:>10.5} {:>14.6} {:>14.6}", value.norm(), spectrum[k])?;
        if value.norm() > best.1 {
            best = (omega, value.norm());
        }
    }
    writeln!(
        out,
        "probe peak at ω = {:.5}, {:.2} bins from the FFT line",
        best.0,
        (best.0 - centre) / bin
    )?;
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example(&mut io::stdout())
}
