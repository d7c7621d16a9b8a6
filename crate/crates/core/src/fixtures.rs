//! Reference states with known answers.
//!
//! `ρ₀(x) = ¼[I⊗I + (1/x) σ₃⊗I + (1/x) I⊗σ₃ + (1/x²) σ₁⊗σ₁ + (1/x²) σ₃⊗σ₃]`
//! is a valid state for `x ≥ √2` (its smallest eigenvalue is exactly zero at
//! `x = √2`). Its one-sided screens rule out both classical-quantum and
//! quantum-classical while the correlation-matrix screen stays inconclusive.
//!
//! The raw-Pauli Bloch form carries the coefficients as written above. In
//! the normalized basis `σ_i/√2` every `r_i`, `s_j` scales by `√2` and every
//! `t_ij` by `2`, which changes no rank.

use nalgebra::DVector;

use crate::basis::HermitianBasis;
use crate::bloch::BlochForm;
use crate::linalg::{ComplexMatrix, RealMatrix};

/// `(σ₁, σ₂, σ₃)` with Hilbert-Schmidt norm `√2`.
pub fn raw_pauli() -> HermitianBasis {
    HermitianBasis::pauli().scaled(std::f64::consts::SQRT_2)
}

pub fn rho0_bloch(x: f64) -> BlochForm {
    let a = 1.0 / x;
    let b = a * a;
    BlochForm::new(
        DVector::from_column_slice(&[0.0, 0.0, a]),
        DVector::from_column_slice(&[0.0, 0.0, a]),
        RealMatrix::from_diagonal(&DVector::from_column_slice(&[b, 0.0, b])),
        raw_pauli(),
        raw_pauli(),
    )
    .expect("fixed shapes")
}

pub fn rho0_density(x: f64) -> ComplexMatrix {
    rho0_bloch(x).reconstruct()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bloch::decompose;
    use crate::linalg::{hermitian_eigen, numerical_rank, validate_density, Tolerance};

    /// Closed-form spectrum of ρ₀: the σ₁⊗σ₁ term couples |00⟩↔|11⟩ and
    /// |01⟩↔|10⟩, giving ¼{1 + b ± √(4a² + b²), 1, 1 − 2b} with a = 1/x,
    /// b = 1/x².
    fn rho0_spectrum(x: f64) -> [f64; 4] {
        let a = 1.0 / x;
        let b = a * a;
        let root = (4.0 * a * a + b * b).sqrt();
        let mut e = [(1.0 + b - root) / 4.0, (1.0 + b + root) / 4.0, 0.25, (1.0 - 2.0 * b) / 4.0];
        e.sort_by(f64::total_cmp);
        e
    }

    #[test]
    fn rho0_spectrum_matches_closed_form() {
        for x in [std::f64::consts::SQRT_2, 2.0, 10.0, 1.3] {
            let (values, _) = hermitian_eigen(&rho0_density(x)).unwrap();
            for (v, e) in values.iter().zip(rho0_spectrum(x)) {
                assert!((v - e).abs() < 1e-14, "x = {x}: {v} vs {e}");
            }
        }
    }

    #[test]
    fn rho0_is_a_state_from_sqrt2_up() {
        let tol = Tolerance::default();
        for x in [std::f64::consts::SQRT_2, 2.0, 10.0] {
            assert!(validate_density(&rho0_density(x), tol).unwrap().is_valid());
        }
        // Boundary is tight: just below √2 the lowest eigenvalue goes negative.
        let below = validate_density(&rho0_density(1.4), tol).unwrap();
        assert!(below.hermitian && below.unit_trace && !below.psd);
        assert!((below.min_eigenvalue - rho0_spectrum(1.4)[0]).abs() < 1e-14);
    }

    #[test]
    fn rho0_correlation_matrix_as_published() {
        let x = 2.0;
        let c = rho0_bloch(x).correlation_matrix();
        #[rustfmt::skip]
        let expected = RealMatrix::from_row_slice(4, 4, &[
            1.0, 0.0, 0.0, 1.0 / x,
            0.0, 1.0 / (x * x), 0.0, 0.0,
            0.0, 0.0, 0.0, 0.0,
            1.0 / x, 0.0, 0.0, 1.0 / (x * x),
        ]);
        assert!((&c - expected).amax() < 1e-15);
        assert_eq!(numerical_rank(&c, Tolerance::default()), 2);
    }

    #[test]
    fn decomposing_rho0_recovers_coefficients() {
        let tol = Tolerance::default();
        let x = 10.0;
        let bf = decompose(&rho0_density(x), 2, 2, &raw_pauli(), &raw_pauli(), tol).unwrap();
        let reference = rho0_bloch(x);
        assert!((&bf.r - &reference.r).amax() < 1e-15);
        assert!((&bf.s - &reference.s).amax() < 1e-15);
        assert!((&bf.t - &reference.t).amax() < 1e-15);
    }
}
