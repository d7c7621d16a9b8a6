//! von Neumann measurements and their matrix representation on the space of
//! traceless Hermitian operators.
//!
//! A measurement is encoded by a unitary `A` whose row `i` holds the
//! coefficients of the measurement vector `|φ_i⟩ = Σ_j a_ij |j⟩`. Its action
//! `X ↦ Σ_i ⟨φ_i|X|φ_i⟩ |φ_i⟩⟨φ_i|` maps traceless Hermitian operators to
//! traceless Hermitian operators, so in a basis `{μ_i}` it is a real matrix
//! `M` with `M(μ_i) = Σ_j μ_j M_ji`. That matrix is idempotent of rank `m−1`.

use nalgebra::DVector;
use num_complex::Complex64;
use serde::Serialize;

use crate::basis::{upper_pairs, BasisLabel, HermitianBasis};
use crate::linalg::{
    c64, numerical_rank, real_part_checked, require_square, trace_product, unitarity_defect,
    ComplexMatrix, RealMatrix, Tolerance,
};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct VonNeumannMeasurement {
    unitary: ComplexMatrix,
}

impl VonNeumannMeasurement {
    /// Validates `‖AA† − I‖_F ≤ eq_abs`.
    pub fn from_unitary(a: ComplexMatrix, tol: Tolerance) -> Result<Self> {
        let defect = unitarity_defect(&a)?;
        if defect.is_nan() || defect > tol.eq_abs {
            return Err(Error::NotUnitary { defect });
        }
        Ok(Self { unitary: a })
    }

    /// Projective measurement onto `|0⟩, …, |m−1⟩`.
    pub fn computational(m: usize) -> Self {
        Self {
            unitary: ComplexMatrix::identity(m, m),
        }
    }

    /// Measurement whose vectors are the columns of `v` (for instance an
    /// eigenvector matrix). The stored unitary is `vᵀ`.
    pub fn from_columns(v: &ComplexMatrix, tol: Tolerance) -> Result<Self> {
        Self::from_unitary(v.transpose(), tol)
    }

    pub fn dim(&self) -> usize {
        self.unitary.nrows()
    }

    pub fn unitary(&self) -> &ComplexMatrix {
        &self.unitary
    }

    /// `|φ_i⟩` as a column vector.
    pub fn vector(&self, i: usize) -> DVector<Complex64> {
        self.unitary.row(i).transpose()
    }

    /// Matrix whose column `i` is `|φ_i⟩`.
    pub fn vectors(&self) -> ComplexMatrix {
        self.unitary.transpose()
    }

    pub fn projector(&self, i: usize) -> ComplexMatrix {
        let v = self.vector(i);
        &v * v.adjoint()
    }

    pub fn projectors(&self) -> Vec<ComplexMatrix> {
        (0..self.dim()).map(|i| self.projector(i)).collect()
    }

    /// `Σ_i ⟨φ_i|x|φ_i⟩ |φ_i⟩⟨φ_i|`
    pub fn apply(&self, x: &ComplexMatrix) -> Result<ComplexMatrix> {
        let m = self.dim();
        if x.nrows() != m || x.ncols() != m {
            return Err(Error::Shape(format!(
                "measurement acts on {m}x{m} operators, got {}x{}",
                x.nrows(),
                x.ncols()
            )));
        }
        let v = self.vectors();
        // In the measurement basis the action keeps only the diagonal.
        let rotated = v.adjoint() * x * &v;
        let diag = ComplexMatrix::from_diagonal(&rotated.diagonal());
        Ok(&v * diag * v.adjoint())
    }

    pub fn lift(&self, b: &HermitianBasis, tol: Tolerance) -> Result<LiftedMeasurement> {
        lift_matrix(self, b, tol)
    }
}

/// Real matrix `M` of a measurement in a given operator basis.
#[derive(Debug, Clone, PartialEq)]
pub struct LiftedMeasurement {
    pub dim: usize,
    pub matrix: RealMatrix,
    pub basis_labels: Vec<BasisLabel>,
}

impl LiftedMeasurement {
    /// `‖M² − M‖_F`
    pub fn idempotency_defect(&self) -> f64 {
        (&self.matrix * &self.matrix - &self.matrix).norm()
    }

    pub fn rank(&self, tol: Tolerance) -> usize {
        numerical_rank(&self.matrix, tol)
    }
}

fn check_dims(meas: &VonNeumannMeasurement, b: &HermitianBasis) -> Result<()> {
    if b.dim() != meas.dim() {
        return Err(Error::Shape(format!(
            "basis dimension {} does not match measurement dimension {}",
            b.dim(),
            meas.dim()
        )));
    }
    Ok(())
}

/// `M_ji = Tr(μ_j† · 𝓜(μ_i))` for a Hilbert-Schmidt orthonormal basis.
pub fn lift_matrix(
    meas: &VonNeumannMeasurement,
    b: &HermitianBasis,
    tol: Tolerance,
) -> Result<LiftedMeasurement> {
    check_dims(meas, b)?;
    if !b.verify_orthonormal(tol) {
        return Err(Error::Domain(
            "basis is not Hilbert-Schmidt orthonormal; use lift_matrix_general".into(),
        ));
    }
    let images = images(meas, b)?;
    let k = b.len();
    let raw = ComplexMatrix::from_fn(k, k, |j, i| {
        trace_product(&b.elements()[j].adjoint(), &images[i])
    });
    finish(meas, b, raw, tol)
}

/// Lift for any linearly independent basis of traceless Hermitian operators,
/// solving `G M = B` with `G_ji = Tr(μ_j† μ_i)` and `B_ji = Tr(μ_j† 𝓜(μ_i))`.
pub fn lift_matrix_general(
    meas: &VonNeumannMeasurement,
    b: &HermitianBasis,
    tol: Tolerance,
) -> Result<LiftedMeasurement> {
    check_dims(meas, b)?;
    let images = images(meas, b)?;
    let k = b.len();
    let gram = b.gram();
    let rhs = ComplexMatrix::from_fn(k, k, |j, i| {
        trace_product(&b.elements()[j].adjoint(), &images[i])
    });
    let rhs = real_part_checked(&rhs, tol.eq_abs * gram.amax().max(1.0)).ok_or_else(|| {
        Error::Numerical("projections of measured basis elements are not real".into())
    })?;
    if numerical_rank(&gram, tol) < k {
        return Err(Error::Domain("basis elements are linearly dependent".into()));
    }
    let solved = gram
        .lu()
        .solve(&rhs)
        .ok_or_else(|| Error::Domain("basis Gram matrix is singular".into()))?;
    Ok(LiftedMeasurement {
        dim: meas.dim(),
        matrix: solved,
        basis_labels: b.labels().to_vec(),
    })
}

fn images(meas: &VonNeumannMeasurement, b: &HermitianBasis) -> Result<Vec<ComplexMatrix>> {
    b.elements().iter().map(|w| meas.apply(w)).collect()
}

fn finish(
    meas: &VonNeumannMeasurement,
    b: &HermitianBasis,
    raw: ComplexMatrix,
    tol: Tolerance,
) -> Result<LiftedMeasurement> {
    let matrix = real_part_checked(&raw, tol.eq_abs)
        .ok_or_else(|| Error::Numerical("lifted matrix has imaginary entries".into()))?;
    Ok(LiftedMeasurement {
        dim: meas.dim(),
        matrix,
        basis_labels: b.labels().to_vec(),
    })
}

fn checked_unitary(a: &ComplexMatrix, tol: Tolerance) -> Result<usize> {
    let m = require_square(a, "unitary")?;
    let defect = unitarity_defect(a)?;
    if defect.is_nan() || defect > tol.eq_abs {
        return Err(Error::NotUnitary { defect });
    }
    Ok(m)
}

/// Real `m×(m²−1)` matrix `C = (C₁, C₂, C₃)` whose column `c` holds the
/// coefficients of `𝓜(w_c)` on the projectors `|φ_s⟩⟨φ_s|`, with `w_c` the
/// canonical Gell-Mann basis.
pub fn build_c(a: &ComplexMatrix, tol: Tolerance) -> Result<RealMatrix> {
    let m = checked_unitary(a, tol)?;
    let pairs: Vec<(usize, usize)> = upper_pairs(m).collect();
    let mut c = RealMatrix::zeros(m, m * m - 1);
    let s2 = std::f64::consts::SQRT_2;
    for s in 0..m {
        let row = |j: usize| a[(s, j)];
        for p in 1..m {
            let head: f64 = (0..p).map(|j| row(j).norm_sqr()).sum();
            let scale = (1.0 / (p * (p + 1)) as f64).sqrt();
            c[(s, p - 1)] = scale * (head - p as f64 * row(p).norm_sqr());
        }
        for (idx, &(k, l)) in pairs.iter().enumerate() {
            let z = row(k).conj() * row(l);
            // (z + z*)/√2 and i(z − z*)/√2
            c[(s, m - 1 + idx)] = s2 * z.re;
            c[(s, m - 1 + pairs.len() + idx)] = -s2 * z.im;
        }
    }
    Ok(c)
}

/// Complex `m×(m²−1)` matrix with columns `α_i` (`i = 1..m−1`) followed by
/// `β_kl` for all ordered pairs `k ≠ l` in lexicographic order. Its rank
/// equals that of [`build_c`].
pub fn build_c0(a: &ComplexMatrix, tol: Tolerance) -> Result<ComplexMatrix> {
    let m = checked_unitary(a, tol)?;
    let mut c0 = ComplexMatrix::zeros(m, m * m - 1);
    for s in 0..m {
        for i in 1..m {
            c0[(s, i - 1)] = c64(a[(s, 0)].norm_sqr() - a[(s, i)].norm_sqr(), 0.0);
        }
        let mut col = m - 1;
        for k in 0..m {
            for l in (0..m).filter(|&l| l != k) {
                c0[(s, col)] = a[(s, k)].conj() * a[(s, l)];
                col += 1;
            }
        }
    }
    Ok(c0)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConsistencyReport {
    pub max_deviation: f64,
    pub columns: usize,
}

/// Compares `𝓜(w_c)` with `Σ_s C_sc |φ_s⟩⟨φ_s|` for every basis element.
/// Meaningful only for the canonical [`HermitianBasis::gell_mann`] basis;
/// any other basis simply reports a large deviation.
pub fn consistency_check(
    meas: &VonNeumannMeasurement,
    b: &HermitianBasis,
    tol: Tolerance,
) -> Result<ConsistencyReport> {
    check_dims(meas, b)?;
    let c = build_c(meas.unitary(), tol)?;
    let projectors = meas.projectors();
    let mut worst = 0.0_f64;
    for (col, w) in b.elements().iter().enumerate() {
        let measured = meas.apply(w)?;
        let predicted = projectors
            .iter()
            .enumerate()
            .fold(ComplexMatrix::zeros(meas.dim(), meas.dim()), |acc, (s, p)| {
                acc + p * c64(c[(s, col)], 0.0)
            });
        worst = worst.max((measured - predicted).camax());
    }
    Ok(ConsistencyReport {
        max_deviation: worst,
        columns: b.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::frobenius_distance;
    use crate::sampler::{random_orthogonal, random_unitary, Seed};

    const R: f64 = std::f64::consts::FRAC_1_SQRT_2;

    fn hadamard() -> ComplexMatrix {
        ComplexMatrix::from_row_slice(
            2,
            2,
            &[c64(R, 0.0), c64(R, 0.0), c64(R, 0.0), c64(-R, 0.0)],
        )
    }

    fn real_diag(d: &[f64]) -> RealMatrix {
        RealMatrix::from_diagonal(&DVector::from_column_slice(d))
    }

    #[test]
    fn from_unitary_cases() {
        let tol = Tolerance::default();
        let comp = VonNeumannMeasurement::from_unitary(ComplexMatrix::identity(2, 2), tol).unwrap();
        assert_eq!(comp.projector(0)[(0, 0)], c64(1.0, 0.0));
        assert_eq!(comp.projector(1)[(1, 1)], c64(1.0, 0.0));

        let h = VonNeumannMeasurement::from_unitary(hadamard(), tol).unwrap();
        let plus = h.projector(0);
        assert!(plus.iter().all(|z| (z.re - 0.5).abs() < 1e-15));

        let shear = ComplexMatrix::from_row_slice(
            2,
            2,
            &[c64(1.0, 0.0), c64(1.0, 0.0), c64(0.0, 0.0), c64(1.0, 0.0)],
        );
        assert!(matches!(
            VonNeumannMeasurement::from_unitary(shear, tol),
            Err(Error::NotUnitary { .. })
        ));
    }

    #[test]
    fn projectors_resolve_identity() {
        let tol = Tolerance::default();
        let meas = VonNeumannMeasurement::from_unitary(random_unitary(4, Seed(2)), tol).unwrap();
        let sum = meas
            .projectors()
            .into_iter()
            .fold(ComplexMatrix::zeros(4, 4), |acc, p| acc + p);
        assert!(frobenius_distance(&sum, &ComplexMatrix::identity(4, 4)) <= tol.eq_abs);
        let p = meas.projectors();
        assert!((&p[0] * &p[1]).norm() <= tol.eq_abs);
    }

    #[test]
    fn apply_examples() {
        let comp = VonNeumannMeasurement::computational(3);
        let d = ComplexMatrix::from_diagonal(&DVector::from_column_slice(&[
            c64(0.2, 0.0),
            c64(0.3, 0.0),
            c64(0.5, 0.0),
        ]));
        assert!(frobenius_distance(&comp.apply(&d).unwrap(), &d) < 1e-15);

        let x = HermitianBasis::pauli().elements()[0].clone();
        let comp2 = VonNeumannMeasurement::computational(2);
        assert!(comp2.apply(&x).unwrap().norm() < 1e-15);

        let h = VonNeumannMeasurement::from_unitary(hadamard(), Tolerance::default()).unwrap();
        let z = HermitianBasis::pauli().elements()[2].clone();
        assert!(h.apply(&z).unwrap().norm() < 1e-15);

        assert!(matches!(comp2.apply(&d), Err(Error::Shape(_))));
    }

    #[test]
    fn apply_is_idempotent_and_trace_preserving() {
        let tol = Tolerance::default();
        let meas = VonNeumannMeasurement::from_unitary(random_unitary(3, Seed(8)), tol).unwrap();
        let g = random_unitary(3, Seed(9)) * c64(0.7, 0.0) + random_unitary(3, Seed(10));
        let x = &g + g.adjoint();
        let once = meas.apply(&x).unwrap();
        let twice = meas.apply(&once).unwrap();
        assert!(frobenius_distance(&once, &twice) <= tol.eq_abs);
        assert!((once.trace() - x.trace()).norm() <= tol.eq_abs);
        for p in meas.projectors() {
            assert!((&once * &p - &p * &once).norm() <= tol.eq_abs);
        }
    }

    #[test]
    fn published_lifts() {
        let tol = Tolerance::default();
        let m2 = VonNeumannMeasurement::computational(2)
            .lift(&HermitianBasis::pauli(), tol)
            .unwrap();
        assert!((&m2.matrix - real_diag(&[0.0, 0.0, 1.0])).amax() <= 1e-12);
        assert_eq!(m2.rank(tol), 1);

        let m3 = VonNeumannMeasurement::computational(3)
            .lift(&HermitianBasis::gell_mann_lambda(), tol)
            .unwrap();
        let expected = real_diag(&[0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0, 1.0]);
        assert!((&m3.matrix - expected).amax() <= 1e-12);
        assert_eq!(m3.rank(tol), 2);
    }

    #[test]
    fn unnormalized_pauli_lift_via_gram_system() {
        let tol = Tolerance::default();
        let raw = HermitianBasis::pauli().scaled(2.0_f64.sqrt());
        let comp = VonNeumannMeasurement::computational(2);
        assert!(matches!(comp.lift(&raw, tol), Err(Error::Domain(_))));
        let m = lift_matrix_general(&comp, &raw, tol).unwrap();
        assert!((&m.matrix - real_diag(&[0.0, 0.0, 1.0])).amax() <= 1e-12);
    }

    #[test]
    fn lift_in_non_orthogonal_basis_keeps_rank() {
        let tol = Tolerance::default();
        let b = HermitianBasis::gell_mann(3).unwrap();
        // Upper-triangular, invertible mixing of the elements.
        let q = RealMatrix::from_fn(8, 8, |i, j| if i <= j { 1.0 + 0.1 * i as f64 } else { 0.0 });
        let mixed: Vec<ComplexMatrix> = (0..8)
            .map(|j| {
                let coeffs: Vec<f64> = (0..8).map(|i| q[(i, j)]).collect();
                b.combine(&coeffs)
            })
            .collect();
        let skew = HermitianBasis::from_elements(3, mixed, b.labels().to_vec(), tol).unwrap();
        let meas = VonNeumannMeasurement::from_unitary(random_unitary(3, Seed(4)), tol).unwrap();
        let lifted = lift_matrix_general(&meas, &skew, tol).unwrap();
        assert_eq!(lifted.rank(tol), 2);
        assert!(lifted.idempotency_defect() < 1e-9);
        // Same operator, different coordinates: M' = Q⁻¹ M Q.
        let orth = meas.lift(&b, tol).unwrap();
        let q_inv = q.clone().try_inverse().unwrap();
        assert!((&lifted.matrix - q_inv * &orth.matrix * &q).amax() < 1e-9);
    }

    #[test]
    fn random_lift_is_rank_three_projection() {
        let tol = Tolerance::default();
        let meas = VonNeumannMeasurement::from_unitary(random_unitary(4, Seed(1)), tol).unwrap();
        let lifted = meas.lift(&HermitianBasis::gell_mann(4).unwrap(), tol).unwrap();
        assert!(lifted.idempotency_defect() < 1e-10);
        assert_eq!(lifted.rank(tol), 3);
    }

    #[test]
    fn lift_covariant_under_basis_rotation() {
        let tol = Tolerance::default();
        let b = HermitianBasis::gell_mann(3).unwrap();
        let o = random_orthogonal(8, Seed(6));
        let meas = VonNeumannMeasurement::from_unitary(random_unitary(3, Seed(7)), tol).unwrap();
        let m = meas.lift(&b, tol).unwrap().matrix;
        let rotated = meas.lift(&b.rotate(&o, tol).unwrap(), tol).unwrap().matrix;
        assert!((rotated - o.transpose() * m * &o).amax() <= tol.eq_abs);
    }

    #[test]
    fn lift_rejects_dimension_mismatch() {
        let tol = Tolerance::default();
        let meas = VonNeumannMeasurement::computational(2);
        assert!(matches!(
            meas.lift(&HermitianBasis::gell_mann(3).unwrap(), tol),
            Err(Error::Shape(_))
        ));
    }

    #[test]
    fn c_matrices_for_identity() {
        let tol = Tolerance::default();
        let c = build_c(&ComplexMatrix::identity(2, 2), tol).unwrap();
        let expected = RealMatrix::from_row_slice(2, 3, &[R, 0.0, 0.0, -R, 0.0, 0.0]);
        assert!((&c - expected).amax() < 1e-15);
        assert_eq!(numerical_rank(&c, tol), 1);

        let c0 = build_c0(&ComplexMatrix::identity(2, 2), tol).unwrap();
        let expected0 = ComplexMatrix::from_row_slice(
            2,
            3,
            &[
                c64(1.0, 0.0),
                c64(0.0, 0.0),
                c64(0.0, 0.0),
                c64(-1.0, 0.0),
                c64(0.0, 0.0),
                c64(0.0, 0.0),
            ],
        );
        assert!(frobenius_distance(&c0, &expected0) < 1e-15);
        assert_eq!(numerical_rank(&c0, tol), 1);
    }

    #[test]
    fn c_matrices_random_qutrit() {
        let tol = Tolerance::default();
        for seed in 0..20 {
            let a = random_unitary(3, Seed(seed));
            let c = build_c(&a, tol).unwrap();
            let c0 = build_c0(&a, tol).unwrap();
            assert_eq!(numerical_rank(&c, tol), 2);
            assert_eq!(numerical_rank(&c0, tol), 2);
            assert!(c.row_sum().norm() <= 1e-10);
            assert!(c0.row_sum().norm() <= 1e-10);
        }
    }

    #[test]
    fn c_matrices_reject_non_unitary() {
        let tol = Tolerance::default();
        let a = ComplexMatrix::identity(3, 3) * c64(2.0, 0.0);
        assert!(matches!(build_c(&a, tol), Err(Error::NotUnitary { .. })));
        assert!(matches!(build_c0(&a, tol), Err(Error::NotUnitary { .. })));
    }

    #[test]
    fn consistency_examples() {
        let tol = Tolerance::default();
        let b2 = HermitianBasis::gell_mann(2).unwrap();
        let comp = VonNeumannMeasurement::computational(2);
        assert!(consistency_check(&comp, &b2, tol).unwrap().max_deviation <= 1e-12);
        let h = VonNeumannMeasurement::from_unitary(hadamard(), tol).unwrap();
        assert!(consistency_check(&h, &b2, tol).unwrap().max_deviation <= 1e-12);
        let meas = VonNeumannMeasurement::from_unitary(random_unitary(4, Seed(3)), tol).unwrap();
        let report = consistency_check(&meas, &HermitianBasis::gell_mann(4).unwrap(), tol).unwrap();
        assert!(report.max_deviation <= 1e-10);
        assert_eq!(report.columns, 15);
    }
}
