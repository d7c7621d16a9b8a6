//! Lifts Haar-random measurements and reports the worst idempotency defect
//! and any rank other than m-1.

use nullity::basis::HermitianBasis;
use nullity::measurement::VonNeumannMeasurement;
use nullity::sampler::{random_unitary, Seed};
use nullity::Tolerance;

fn main() -> nullity::Result<()> {
    let tol = Tolerance::default();
    for m in 2..=5 {
        let basis = HermitianBasis::gell_mann(m)?;
        let (mut worst, mut bad_rank) = (0.0f64, 0);
        for i in 0..200 {
            let meas = VonNeumannMeasurement::from_unitary(random_unitary(m, Seed(i)), tol)?;
            let lifted = meas.lift(&basis, tol)?;
            worst = worst.max(lifted.idempotency_defect());
            bad_rank += usize::from(lifted.rank(tol) != m - 1);
        }
        println!("m = {m}: worst ||M^2 - M|| {worst:.1e}, rank != m-1 in {bad_rank} of 200");
    }
    Ok(())
}
