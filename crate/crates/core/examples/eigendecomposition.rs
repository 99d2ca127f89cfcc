// Diagonalize a seeded random Hermitian matrix, check the decomposition and
// round-trip it through JSON.
//
// ```bash
// cargo run -p weightint --example eigendecomposition
// ```

use std::error::Error;
use std::io::{self, Write};

use weightint::bench::{bench_rng, random_hermitian};
use weightint::matcore::{eigendecompose, ComplexMatrix, EigenDecomposition};

pub fn run_example(out: &mut dyn Write) -> Result<(), Box<dyn Error>> {
    let mut rng = bench_rng(42);
    let h = random_hermitian(6, &mut rng);
    let eig = eigendecompose(&h, 1.0)?;

    writeln!(out, "eigenvalues (ascending):")?;
    for (k, lambda) in eig.eigenvalues().iter().enumerate() {
        writeln!(out, "  λ{k} = {lambda:+.12}")?;
    }

    let v = eig.vectors();
    let unitarity = v
        .adjoint()
        .matmul(v)?
        .max_abs_diff(&ComplexMatrix::identity(h.size()))?;
    let residual = eig.reconstruct().max_abs_diff(&h)? / h.frobenius_norm();
    writeln!(out, "max |V†V - I|        = {unitarity:.2e}")?;
    writeln!(out, "max |VΛV† - H| / ‖H‖ = {residual:.2e}")?;

    // Going to the eigenbasis and back is the identity map.
    let back = eig.from_eigenbasis(&eig.to_eigenbasis(&h)?)?;
    writeln!(out, "basis round trip     = {:.2e}", back.max_abs_diff(&h)?)?;

    let json = serde_json::to_string(&eig)?;
    let restored: EigenDecomposition = serde_json::from_str(&json)?;
    writeln!(out, "JSON: {} bytes, exact round trip: {}", json.len(), restored == eig)?;
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example(&mut io::stdout())
}
