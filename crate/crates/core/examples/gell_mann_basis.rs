//! Builds the generalized Gell-Mann basis, checks orthonormality, and shows
//! that an orthogonal rotation of it is again an orthonormal basis.

use nullity::basis::HermitianBasis;
use nullity::sampler::{random_orthogonal, Seed};
use nullity::Tolerance;

fn main() -> nullity::Result<()> {
    let tol = Tolerance::default();
    let m: usize = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(3);
    let basis = HermitianBasis::gell_mann(m)?;
    println!("m = {m}: {} elements, orthonormal: {}", basis.len(), basis.verify_orthonormal(tol));
    for (label, w) in basis.labels().iter().zip(basis.elements()) {
        println!("{label:<20} trace {:+.1e}", w.trace().re);
    }
    let rotated = basis.rotate(&random_orthogonal(basis.len(), Seed(1)), tol)?;
    println!("rotated basis orthonormal: {}", rotated.verify_orthonormal(tol));
    Ok(())
}
