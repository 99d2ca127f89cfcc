// A spin-1/2 precessing about z, observed along x: `⟨σx⟩(t) = cos(ω₀t)`.
// The weighted integral has a closed form; the operator reproduces it at
// every horizon without time stepping.
//
// ```bash
// cargo run -p weightint --example two_level
// ```

use std::error::Error;
use std::f64::consts::FRAC_1_SQRT_2;
use std::io::{self, Write};

use weightint::intop::{weighted_integral, Horizon, QuantumState, WeightExponent};
use weightint::{ComplexMatrix, ComplexVector};

/// `∫_0^t cos(ω s) e^{-a s} ds`.
fn closed_form(a: f64, omega: f64, t: f64) -> f64 {
    let e = (-a * t).exp();
    (a + e * (omega * (omega * t).sin() - a * (omega * t).cos())) / (a * a + omega * omega)
}

pub fn run_example(out: &mut dyn Write) -> Result<(), Box<dyn Error>> {
    let omega0 = 1.0;
    let rate = 0.2;
    let h = ComplexMatrix::from_real_diagonal(&[omega0 / 2.0, -omega0 / 2.0]);
    let sx = ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]])?;
    let plus_x = QuantumState::pure(ComplexVector::from_real(&[FRAC_1_SQRT_2, FRAC_1_SQRT_2])?)?;
    let weight = WeightExponent::decay(rate)?;

    writeln!(
        out,
        "{:>8} {:>20} {:>20} {:>10}",
        "t", "operator", "closed form", "|diff|"
    )?;
    for t in [0.0, 1.0, 5.0, 10.0, 50.0] {
        let value = weighted_integral(&h, &sx, &plus_x, weight, Horizon::Finite(t), 1.0)?.re;
        let exact = closed_form(rate, omega0, t);
        writeln!(
            out,
            "{t:>8.1} {value:>20.15} {exact:>20.15} {:>10.1e}",
            (value - exact).abs()
        )?;
    }

    let value = weighted_integral(&h, &sx, &plus_x, weight, Horizon::Infinite, 1.0)?.re;
    let exact = rate / (rate * rate + omega0 * omega0);
    writeln!(
        out,
        "{:>8} {value:>20.15} {exact:>20.15} {:>10.1e}",
        "inf",
        (value - exact).abs()
    )?;

    // Without decay the infinite horizon diverges and is rejected.
    let undamped = WeightExponent::decay(0.0)?;
    match weighted_integral(&h, &sx, &plus_x, undamped, Horizon::Infinite, 1.0) {
        Err(e) => writeln!(out, "rate 0, t = inf: {e}")?,
        Ok(v) => writeln!(out, "rate 0, t = inf unexpectedly gave {v}")?,
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example(&mut io::stdout())
}
