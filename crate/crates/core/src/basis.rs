//! Orthonormal bases of traceless Hermitian operators.
//!
//! The canonical basis is the generalized Gell-Mann set, ordered as the
//! `m−1` diagonal generators, then the symmetric generators `w_kl` for
//! `k < l` in lexicographic order, then the antisymmetric generators `w'_kl`
//! in the same order. The [`crate::measurement`] module relies on this order
//! when it lines up basis elements with the columns of the `C` matrix.

use std::fmt;

use num_complex::Complex64;
use serde::Serialize;

use crate::linalg::{c64, is_hermitian, trace_product, ComplexMatrix, RealMatrix, Tolerance};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BasisLabel {
    /// `w_p`, `p = 1..m−1`.
    Diagonal(usize),
    /// `w_kl = (|k⟩⟨l| + |l⟩⟨k|)/√2`, `k < l`.
    Symmetric(usize, usize),
    /// `w'_kl = i(|k⟩⟨l| − |l⟩⟨k|)/√2`, `k < l`.
    Antisymmetric(usize, usize),
    /// Column `j` of an orthogonal rotation of another basis.
    Rotated(usize),
}

impl fmt::Display for BasisLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Diagonal(p) => write!(f, "diagonal({p})"),
            Self::Symmetric(k, l) => write!(f, "symmetric({k},{l})"),
            Self::Antisymmetric(k, l) => write!(f, "antisymmetric({k},{l})"),
            Self::Rotated(j) => write!(f, "rotated({j})"),
        }
    }
}

/// Pairs `(k, l)` with `k < l < m` in lexicographic order.
pub fn upper_pairs(m: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..m).flat_map(move |k| (k + 1..m).map(move |l| (k, l)))
}

/// An ordered set of `m²−1` traceless Hermitian `m×m` matrices.
///
/// Construction only checks shape, Hermiticity and tracelessness.
/// Orthonormality is a separate question answered by
/// [`HermitianBasis::verify_orthonormal`], so non-orthonormal bases can be
/// represented too (see [`crate::measurement::lift_matrix_general`]).
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianBasis {
    dim: usize,
    elements: Vec<ComplexMatrix>,
    labels: Vec<BasisLabel>,
}

impl HermitianBasis {
    /// Generalized Gell-Mann basis in canonical order.
    pub fn gell_mann(m: usize) -> Result<Self> {
        if m < 2 {
            return Err(Error::Domain(format!("basis dimension must be at least 2, got {m}")));
        }
        let count = m * m - 1;
        let mut elements = Vec::with_capacity(count);
        let mut labels = Vec::with_capacity(count);

        for p in 1..m {
            let scale = (1.0 / (p * (p + 1)) as f64).sqrt();
            let mut w = ComplexMatrix::zeros(m, m);
            for a in 0..p {
                w[(a, a)] = c64(scale, 0.0);
            }
            w[(p, p)] = c64(-(p as f64) * scale, 0.0);
            elements.push(w);
            labels.push(BasisLabel::Diagonal(p));
        }

        let r = std::f64::consts::FRAC_1_SQRT_2;
        for (k, l) in upper_pairs(m) {
            let mut w = ComplexMatrix::zeros(m, m);
            w[(k, l)] = c64(r, 0.0);
            w[(l, k)] = c64(r, 0.0);
            elements.push(w);
            labels.push(BasisLabel::Symmetric(k, l));
        }
        for (k, l) in upper_pairs(m) {
            let mut w = ComplexMatrix::zeros(m, m);
            w[(k, l)] = c64(0.0, r);
            w[(l, k)] = c64(0.0, -r);
            elements.push(w);
            labels.push(BasisLabel::Antisymmetric(k, l));
        }

        Ok(Self {
            dim: m,
            elements,
            labels,
        })
    }

    /// `(σ₁, σ₂, σ₃)/√2`, the Pauli matrices in their usual order and
    /// normalized under the Hilbert-Schmidt inner product.
    pub fn pauli() -> Self {
        let r = std::f64::consts::FRAC_1_SQRT_2;
        let z = c64(0.0, 0.0);
        let elements = vec![
            ComplexMatrix::from_row_slice(2, 2, &[z, c64(r, 0.0), c64(r, 0.0), z]),
            ComplexMatrix::from_row_slice(2, 2, &[z, c64(0.0, -r), c64(0.0, r), z]),
            ComplexMatrix::from_row_slice(2, 2, &[c64(r, 0.0), z, z, c64(-r, 0.0)]),
        ];
        Self {
            dim: 2,
            elements,
            labels: vec![
                BasisLabel::Symmetric(0, 1),
                BasisLabel::Antisymmetric(0, 1),
                BasisLabel::Diagonal(1),
            ],
        }
    }

    /// `(λ₁, …, λ₈)/√2`, the Gell-Mann matrices in their usual order and
    /// normalized under the Hilbert-Schmidt inner product.
    pub fn gell_mann_lambda() -> Self {
        let r = std::f64::consts::FRAC_1_SQRT_2;
        let sym = |k: usize, l: usize| {
            let mut w = ComplexMatrix::zeros(3, 3);
            w[(k, l)] = c64(r, 0.0);
            w[(l, k)] = c64(r, 0.0);
            w
        };
        // λ₂, λ₅, λ₇ have −i above the diagonal.
        let anti = |k: usize, l: usize| {
            let mut w = ComplexMatrix::zeros(3, 3);
            w[(k, l)] = c64(0.0, -r);
            w[(l, k)] = c64(0.0, r);
            w
        };
        let diag = |d: [f64; 3]| {
            ComplexMatrix::from_diagonal(&nalgebra::DVector::from_iterator(
                3,
                d.iter().map(|&x| c64(x, 0.0)),
            ))
        };
        let s6 = 1.0 / 6.0_f64.sqrt();
        let elements = vec![
            sym(0, 1),
            anti(0, 1),
            diag([r, -r, 0.0]),
            sym(0, 2),
            anti(0, 2),
            sym(1, 2),
            anti(1, 2),
            diag([s6, s6, -2.0 * s6]),
        ];
        use BasisLabel::*;
        Self {
            dim: 3,
            elements,
            labels: vec![
                Symmetric(0, 1),
                Antisymmetric(0, 1),
                Diagonal(1),
                Symmetric(0, 2),
                Antisymmetric(0, 2),
                Symmetric(1, 2),
                Antisymmetric(1, 2),
                Diagonal(2),
            ],
        }
    }

    pub fn from_elements(
        dim: usize,
        elements: Vec<ComplexMatrix>,
        labels: Vec<BasisLabel>,
        tol: Tolerance,
    ) -> Result<Self> {
        if dim < 2 {
            return Err(Error::Domain(format!("basis dimension must be at least 2, got {dim}")));
        }
        if elements.len() != dim * dim - 1 || labels.len() != elements.len() {
            return Err(Error::Shape(format!(
                "a basis for dimension {dim} needs {} elements and labels, got {} and {}",
                dim * dim - 1,
                elements.len(),
                labels.len()
            )));
        }
        for (i, w) in elements.iter().enumerate() {
            if w.nrows() != dim || w.ncols() != dim {
                return Err(Error::Shape(format!(
                    "element {i} is {}x{}, expected {dim}x{dim}",
                    w.nrows(),
                    w.ncols()
                )));
            }
            if !is_hermitian(w, tol)? {
                return Err(Error::NotHermitian(format!("basis element {i}")));
            }
            if w.trace().norm() > tol.eq_abs {
                return Err(Error::Domain(format!("basis element {i} is not traceless")));
            }
        }
        Ok(Self {
            dim,
            elements,
            labels,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[ComplexMatrix] {
        &self.elements
    }

    pub fn labels(&self) -> &[BasisLabel] {
        &self.labels
    }

    /// Every element multiplied by `factor`. Lifted measurement matrices
    /// computed through the Gram system are unchanged by this.
    pub fn scaled(&self, factor: f64) -> Self {
        Self {
            dim: self.dim,
            elements: self.elements.iter().map(|w| w * c64(factor, 0.0)).collect(),
            labels: self.labels.clone(),
        }
    }

    /// Hilbert-Schmidt Gram matrix `G_ij = Tr(w_i† w_j)`. Real for Hermitian
    /// elements.
    pub fn gram(&self) -> RealMatrix {
        let k = self.len();
        RealMatrix::from_fn(k, k, |i, j| {
            trace_product(&self.elements[i].adjoint(), &self.elements[j]).re
        })
    }

    pub fn verify_orthonormal(&self, tol: Tolerance) -> bool {
        if self.dim < 2 || self.len() != self.dim * self.dim - 1 {
            return false;
        }
        let elements_ok = self.elements.iter().all(|w| {
            w.nrows() == self.dim
                && w.ncols() == self.dim
                && is_hermitian(w, tol).unwrap_or(false)
                && w.trace().norm() <= tol.eq_abs
        });
        if !elements_ok {
            return false;
        }
        let k = self.len();
        for i in 0..k {
            for j in i..k {
                let g = trace_product(&self.elements[i].adjoint(), &self.elements[j]);
                let target = if i == j { 1.0 } else { 0.0 };
                if (g - c64(target, 0.0)).norm() > tol.eq_abs {
                    return false;
                }
            }
        }
        true
    }

    /// Squared Hilbert-Schmidt norms when the elements are pairwise
    /// orthogonal (off-diagonal Gram entries within `eq_abs` relative to the
    /// largest norm), else `None`.
    pub fn orthogonal_norms(&self, tol: Tolerance) -> Option<Vec<f64>> {
        let g = self.gram();
        let norms: Vec<f64> = (0..self.len()).map(|i| g[(i, i)]).collect();
        let scale = norms.iter().copied().fold(0.0, f64::max);
        if scale <= 0.0 || norms.iter().any(|&x| x <= tol.eq_abs * scale) {
            return None;
        }
        for i in 0..self.len() {
            for j in 0..i {
                if g[(i, j)].abs() > tol.eq_abs * scale {
                    return None;
                }
            }
        }
        Some(norms)
    }

    /// New basis with element `j = Σ_i w_i · o_ij`.
    pub fn rotate(&self, o: &RealMatrix, tol: Tolerance) -> Result<Self> {
        let k = self.len();
        if o.nrows() != k || o.ncols() != k {
            return Err(Error::Shape(format!(
                "rotation must be {k}x{k}, got {}x{}",
                o.nrows(),
                o.ncols()
            )));
        }
        let defect = (o * o.transpose() - RealMatrix::identity(k, k)).norm();
        if defect > tol.eq_abs {
            return Err(Error::Domain(format!(
                "rotation is not orthogonal (||OO^T - I||_F = {defect:.3e})"
            )));
        }
        let elements = (0..k)
            .map(|j| {
                self.elements
                    .iter()
                    .enumerate()
                    .fold(ComplexMatrix::zeros(self.dim, self.dim), |acc, (i, w)| {
                        acc + w * c64(o[(i, j)], 0.0)
                    })
            })
            .collect();
        Ok(Self {
            dim: self.dim,
            elements,
            labels: (0..k).map(BasisLabel::Rotated).collect(),
        })
    }

    /// `Tr(w_i† h)` for every element.
    pub fn coefficients(&self, h: &ComplexMatrix) -> Vec<Complex64> {
        self.elements
            .iter()
            .map(|w| trace_product(&w.adjoint(), h))
            .collect()
    }

    /// `Σ_i c_i w_i`.
    pub fn combine(&self, coeffs: &[f64]) -> ComplexMatrix {
        self.elements
            .iter()
            .zip(coeffs)
            .fold(ComplexMatrix::zeros(self.dim, self.dim), |acc, (w, &c)| {
                acc + w * c64(c, 0.0)
            })
    }
}

pub fn gell_mann_basis(m: usize) -> Result<HermitianBasis> {
    HermitianBasis::gell_mann(m)
}

pub fn verify_orthonormal(b: &HermitianBasis, tol: Tolerance) -> bool {
    b.verify_orthonormal(tol)
}

pub fn rotate_basis(b: &HermitianBasis, o: &RealMatrix, tol: Tolerance) -> Result<HermitianBasis> {
    b.rotate(o, tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::frobenius_distance;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    const R: f64 = std::f64::consts::FRAC_1_SQRT_2;

    fn m2(entries: [Complex64; 4]) -> ComplexMatrix {
        ComplexMatrix::from_row_slice(2, 2, &entries)
    }

    fn householder(k: usize, rng: &mut ChaCha8Rng) -> RealMatrix {
        let v = nalgebra::DVector::<f64>::from_fn(k, |_, _| rng.random_range(-1.0..1.0));
        RealMatrix::identity(k, k) - (&v * v.transpose()) * (2.0 / v.dot(&v))
    }

    #[test]
    fn qubit_basis_by_hand() {
        // w_1 = σ₃/√2, w_01 = σ₁/√2, w'_01 = i(|0⟩⟨1| − |1⟩⟨0|)/√2 = −σ₂/√2
        let z = c64(0.0, 0.0);
        let expected = [
            m2([c64(R, 0.0), z, z, c64(-R, 0.0)]),
            m2([z, c64(R, 0.0), c64(R, 0.0), z]),
            m2([z, c64(0.0, R), c64(0.0, -R), z]),
        ];
        let b = HermitianBasis::gell_mann(2).unwrap();
        assert_eq!(b.len(), 3);
        for (w, e) in b.elements().iter().zip(&expected) {
            assert!(frobenius_distance(w, e) < 1e-15);
        }
        assert_eq!(
            b.labels(),
            &[
                BasisLabel::Diagonal(1),
                BasisLabel::Symmetric(0, 1),
                BasisLabel::Antisymmetric(0, 1)
            ]
        );
    }

    #[test]
    fn gram_is_identity_for_small_dims() {
        let tol = Tolerance::default();
        for m in 2..=5 {
            let b = HermitianBasis::gell_mann(m).unwrap();
            assert_eq!(b.len(), m * m - 1);
            assert!((b.gram() - RealMatrix::identity(m * m - 1, m * m - 1)).amax() <= tol.eq_abs);
            for w in b.elements() {
                assert!(is_hermitian(w, tol).unwrap());
                assert!(w.trace().norm() <= tol.eq_abs);
            }
            assert!(b.verify_orthonormal(tol));
        }
    }

    #[test]
    fn dimension_one_rejected() {
        assert!(matches!(HermitianBasis::gell_mann(1), Err(Error::Domain(_))));
        assert!(matches!(HermitianBasis::gell_mann(0), Err(Error::Domain(_))));
    }

    #[test]
    fn doubled_element_fails_orthonormality() {
        let tol = Tolerance::default();
        let b = HermitianBasis::gell_mann(3).unwrap();
        let mut elements = b.elements().to_vec();
        elements[4] *= c64(2.0, 0.0);
        let doubled = HermitianBasis::from_elements(3, elements, b.labels().to_vec(), tol).unwrap();
        assert!(!doubled.verify_orthonormal(tol));
    }

    #[test]
    fn named_bases_are_orthonormal() {
        let tol = Tolerance::default();
        assert!(HermitianBasis::pauli().verify_orthonormal(tol));
        assert!(HermitianBasis::gell_mann_lambda().verify_orthonormal(tol));
        let raw = HermitianBasis::pauli().scaled(2.0_f64.sqrt());
        assert!(!raw.verify_orthonormal(tol));
        let norms = raw.orthogonal_norms(tol).unwrap();
        assert!(norms.iter().all(|&x| (x - 2.0).abs() < 1e-14));
    }

    #[test]
    fn identity_rotation_is_noop() {
        let tol = Tolerance::default();
        let b = HermitianBasis::gell_mann(3).unwrap();
        let r = b.rotate(&RealMatrix::identity(8, 8), tol).unwrap();
        for (x, y) in b.elements().iter().zip(r.elements()) {
            assert!(frobenius_distance(x, y) < 1e-15);
        }
    }

    #[test]
    fn permutation_rotation() {
        let tol = Tolerance::default();
        let b = HermitianBasis::gell_mann(2).unwrap();
        let mut o = RealMatrix::zeros(3, 3);
        o[(1, 0)] = 1.0;
        o[(0, 1)] = 1.0;
        o[(2, 2)] = 1.0;
        let r = b.rotate(&o, tol).unwrap();
        let p = HermitianBasis::pauli();
        // [σ₁/√2, σ₃/√2, −σ₂/√2]
        assert!(frobenius_distance(&r.elements()[0], &p.elements()[0]) < 1e-15);
        assert!(frobenius_distance(&r.elements()[1], &p.elements()[2]) < 1e-15);
        assert!(frobenius_distance(&r.elements()[2], &(-&p.elements()[1])) < 1e-15);
    }

    #[test]
    fn householder_rotation_keeps_orthonormality() {
        let tol = Tolerance::default();
        let mut rng = ChaCha8Rng::seed_from_u64(19);
        for m in [2, 3] {
            let b = HermitianBasis::gell_mann(m).unwrap();
            let o = householder(m * m - 1, &mut rng);
            assert!(b.rotate(&o, tol).unwrap().verify_orthonormal(tol));
        }
    }

    #[test]
    fn rotation_composes() {
        let tol = Tolerance::default();
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        let b = HermitianBasis::gell_mann(3).unwrap();
        let o1 = householder(8, &mut rng);
        let o2 = householder(8, &mut rng) * householder(8, &mut rng);
        let twice = b.rotate(&o1, tol).unwrap().rotate(&o2, tol).unwrap();
        let once = b.rotate(&(&o1 * &o2), tol).unwrap();
        for (x, y) in twice.elements().iter().zip(once.elements()) {
            assert!(frobenius_distance(x, y) <= tol.eq_abs);
        }
    }

    #[test]
    fn non_orthogonal_rotation_rejected() {
        let b = HermitianBasis::gell_mann(2).unwrap();
        let o = RealMatrix::identity(3, 3) * 2.0;
        assert!(matches!(b.rotate(&o, Tolerance::default()), Err(Error::Domain(_))));
        assert!(matches!(
            b.rotate(&RealMatrix::identity(4, 4), Tolerance::default()),
            Err(Error::Shape(_))
        ));
    }

    #[test]
    fn traceless_hermitian_reconstructs_from_coefficients() {
        let mut rng = ChaCha8Rng::seed_from_u64(29);
        for m in 2..=4 {
            let b = HermitianBasis::gell_mann(m).unwrap();
            let g = ComplexMatrix::from_fn(m, m, |_, _| {
                c64(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
            });
            let mut h = &g + g.adjoint();
            let shift = h.trace() / c64(m as f64, 0.0);
            for i in 0..m {
                h[(i, i)] -= shift;
            }
            let coeffs: Vec<f64> = b.coefficients(&h).iter().map(|z| z.re).collect();
            assert!(frobenius_distance(&b.combine(&coeffs), &h) <= 1e-10);
        }
    }
}
