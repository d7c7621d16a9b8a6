//! The real matrix C and the complex matrix C0 built from a measurement's
//! vectors: both have rank m-1 and rows summing to zero, and the lift
//! assembled from them matches the direct lift.

use nullity::basis::HermitianBasis;
use nullity::linalg::numerical_rank;
use nullity::measurement::{build_c, build_c0, consistency_check, VonNeumannMeasurement};
use nullity::sampler::{random_unitary, Seed};
use nullity::Tolerance;

fn main() -> nullity::Result<()> {
    let tol = Tolerance::default();
    let m = 3;
    let a = random_unitary(m, Seed(42));
    let c = build_c(&a, tol)?;
    let c0 = build_c0(&a, tol)?;
    println!("C ({}x{}), rank {}", c.nrows(), c.ncols(), numerical_rank(&c, tol));
    println!("{:.4}", c);
    println!("C0 ({}x{}), rank {}", c0.nrows(), c0.ncols(), numerical_rank(&c0, tol));
    println!("row sums: |C| {:.1e}, |C0| {:.1e}", c.row_sum().norm(), c0.row_sum().norm());
    let meas = VonNeumannMeasurement::from_unitary(a, tol)?;
    let report = consistency_check(&meas, &HermitianBasis::gell_mann(m)?, tol)?;
    println!("max deviation from the direct lift: {:.1e}", report.max_deviation);
    Ok(())
}
