// Seeded timing comparison of the integral operator against
// evolve-then-trapezoid, written as CSV. Values are reproducible for a fixed
// seed; timings are machine dependent.
//
// ```bash
// cargo run --release -p weightint --example benchmark
// ```

use std::error::Error;
use std::io::{self, Write};

use weightint::bench::{run_benchmark, BenchConfig, Method};

pub fn run_example(out: &mut dyn Write) -> Result<(), Box<dyn Error>> {
    let cfg = BenchConfig {
        sizes: vec![4, 8, 16],
        step_counts: vec![100, 1000],
        repeats: 10,
        eval_points: 10,
        seed: 2024,
        ..BenchConfig::default()
    };
    let report = run_benchmark(&cfg)?;
    for failure in &report.failures {
        writeln!(
            out,
            "# size {} repeat {} failed: {}",
            failure.size, failure.repeat, failure.error
        )?;
    }
    report.write_csv(&mut *out)?;

    writeln!(out)?;
    writeln!(out, "{:>6} {:>7} {:>10}", "size", "steps", "speed-up")?;
    for pair in report.records.chunks(2) {
        if let [op, trap] = pair {
            debug_assert_eq!(op.method, Method::IntegralOperator);
            writeln!(
                out,
                "{:>6} {:>7} {:>9.1}×",
                op.size,
                op.steps,
                trap.mean_time / op.mean_time
            )?;
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example(&mut io::stdout())
}
