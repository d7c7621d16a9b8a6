//! The two-qubit family rho0(x): both one-sided screens rule it out while
//! the correlation-matrix screen stays inconclusive. Below x = sqrt 2 the
//! matrix stops being positive.

use nullity::classify::Classification;
use nullity::fixtures::{rho0_bloch, rho0_density};
use nullity::linalg::validate_density;
use nullity::Tolerance;

fn main() -> nullity::Result<()> {
    let tol = Tolerance::default();
    for x in [1.3, std::f64::consts::SQRT_2, 2.0, 10.0] {
        let density = validate_density(&rho0_density(x), tol)?;
        let c = Classification::from_bloch(rho0_bloch(x), tol);
        println!(
            "x = {x:.4}: min eigenvalue {:+.2e}, CQ {} (rank {}), QC {} (rank {}), Dakic {} (rank {})",
            density.min_eigenvalue,
            c.classical_quantum.outcome(),
            c.classical_quantum.computed_rank,
            c.quantum_classical.outcome(),
            c.quantum_classical.computed_rank,
            c.dakic.outcome(),
            c.dakic.computed_rank,
        );
    }
    Ok(())
}
