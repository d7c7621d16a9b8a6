//! Lifts the computational-basis measurement for a qubit and a qutrit and
//! prints the resulting projector on the traceless operator space.
//!
//! Run with `cargo run --example lift_computational`.

use nullity::basis::HermitianBasis;
use nullity::measurement::VonNeumannMeasurement;
use nullity::Tolerance;

fn main() -> nullity::Result<()> {
    let tol = Tolerance::default();
    for (m, basis) in [(2, HermitianBasis::pauli()), (3, HermitianBasis::gell_mann_lambda())] {
        let lifted = VonNeumannMeasurement::computational(m).lift(&basis, tol)?;
        println!("m = {m}: rank {}, ||M^2 - M|| = {:.1e}", lifted.rank(tol), lifted.idempotency_defect());
        println!("{:.3}", lifted.matrix);
    }
    Ok(())
}
