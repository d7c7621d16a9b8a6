//! Decomposes a random 2x3 state into local vectors and a correlation
//! matrix, then rebuilds it.

use nullity::basis::HermitianBasis;
use nullity::bloch::decompose;
use nullity::linalg::frobenius_distance;
use nullity::sampler::{random_density, Seed};
use nullity::Tolerance;

fn main() -> nullity::Result<()> {
    let tol = Tolerance::default();
    let (m, n) = (2, 3);
    let rho = random_density(m * n, Seed(5));
    let (ba, bb) = (HermitianBasis::gell_mann(m)?, HermitianBasis::gell_mann(n)?);
    let form = decompose(&rho, m, n, &ba, &bb, tol)?;
    println!("r = {:.4}", form.r.transpose());
    println!("s = {:.4}", form.s.transpose());
    println!("T ={:.4}", form.t);
    println!("round-trip error {:.1e}", frobenius_distance(&form.reconstruct(), &rho));
    Ok(())
}
