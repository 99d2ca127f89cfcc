// Exponentially weighted time average of the level population of a random
// 8-level system started in its highest state, as a function of the horizon
// `t`. The operator result is exact for every `t`; evolve-then-trapezoid
// converges to it as the step count grows.
//
// ```bash
// cargo run -p weightint --example weighted_average_curve
// ```

use std::error::Error;
use std::io::{self, Write};

use weightint::apps::weighted_average;
use weightint::bench::{bench_rng, highest_state, number_operator, random_hermitian};
use weightint::evolve::{evolve_expectation, trapezoid_weighted_integral};
use weightint::intop::{Horizon, WeightExponent};

pub fn run_example(out: &mut dyn Write) -> Result<(), Box<dyn Error>> {
    const N: usize = 8;
    const TAU: f64 = 10.0;
    let mut rng = bench_rng(1);
    let h = random_hermitian(N, &mut rng);
    let s = number_operator(N);
    let state = highest_state(N);
    let weight = WeightExponent::from_tau(TAU)?;
    let step_counts = [10, 100, 1000];

    write!(out, "{:>6} {:>16}", "t", "operator")?;
    for steps in step_counts {
        write!(out, " {:>16}", format!("trapz({steps})"))?;
    }
    writeln!(out)?;

    for k in 0..=10 {
        let t = 5.0 * k as f64;
        let exact = weighted_average(&h, &s, &state, TAU, Horizon::Finite(t), 1.0)?;
        write!(out, "{t:>6.1} {exact:>16.12}")?;
        for steps in step_counts {
            if t == 0.0 {
                write!(out, " {:>16.12}", exact)?;
                continue;
            }
            let series = evolve_expectation(&h, &s, &state, t, steps, 1.0)?;
            let norm = -TAU * (-t / TAU).exp_m1();
            let approx = trapezoid_weighted_integral(&series, weight)?.re / norm;
            write!(out, " {approx:>16.12}")?;
        }
        writeln!(out)?;
    }

    let limit = weighted_average(&h, &s, &state, TAU, Horizon::Infinite, 1.0)?;
    writeln!(out, "{:>6} {limit:>16.12}", "inf")?;
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example(&mut io::stdout())
}
