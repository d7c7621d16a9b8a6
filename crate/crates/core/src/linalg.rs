//! Dense complex matrix helpers, Hermiticity and density-matrix validation,
//! and tolerance-based numerical rank.
//!
//! Matrices are plain [`nalgebra::DMatrix`] values. The helpers here add the
//! shape checks and tolerance conventions the rest of the crate relies on.

use nalgebra::{ComplexField, DMatrix, SymmetricEigen};
use num_complex::Complex64;
use serde::Serialize;

use crate::{Error, Result};

pub type ComplexMatrix = DMatrix<Complex64>;
pub type RealMatrix = DMatrix<f64>;

/// Numerical cutoffs used throughout the crate.
///
/// `rank_rel` is the relative singular-value cutoff for [`numerical_rank`];
/// `eq_abs` is the absolute cutoff for entrywise and Frobenius comparisons.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Tolerance {
    pub rank_rel: f64,
    pub eq_abs: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Self {
            rank_rel: 1e-9,
            eq_abs: 1e-10,
        }
    }
}

impl Tolerance {
    pub fn new(rank_rel: f64, eq_abs: f64) -> Result<Self> {
        if !(rank_rel > 0.0 && rank_rel < 1.0) {
            return Err(Error::Domain(format!(
                "rank_rel must lie in (0, 1), got {rank_rel}"
            )));
        }
        if !(eq_abs > 0.0 && eq_abs.is_finite()) {
            return Err(Error::Domain(format!("eq_abs must be positive, got {eq_abs}")));
        }
        Ok(Self { rank_rel, eq_abs })
    }
}

pub fn c64(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Builds a matrix from row-major entries, rejecting NaN and infinities.
pub fn from_row_major(rows: usize, cols: usize, entries: &[Complex64]) -> Result<ComplexMatrix> {
    if rows == 0 || cols == 0 {
        return Err(Error::Shape("matrix must have at least one row and column".into()));
    }
    if entries.len() != rows * cols {
        return Err(Error::Shape(format!(
            "expected {} entries for a {rows}x{cols} matrix, got {}",
            rows * cols,
            entries.len()
        )));
    }
    let a = ComplexMatrix::from_row_slice(rows, cols, entries);
    check_finite(&a)?;
    Ok(a)
}

pub fn check_finite(a: &ComplexMatrix) -> Result<()> {
    for i in 0..a.nrows() {
        for j in 0..a.ncols() {
            let z = a[(i, j)];
            if !(z.re.is_finite() && z.im.is_finite()) {
                return Err(Error::NonFinite { row: i, col: j });
            }
        }
    }
    Ok(())
}

pub fn require_square<T: nalgebra::Scalar>(a: &DMatrix<T>, what: &str) -> Result<usize> {
    if a.nrows() != a.ncols() {
        return Err(Error::Shape(format!(
            "{what} must be square, got {}x{}",
            a.nrows(),
            a.ncols()
        )));
    }
    Ok(a.nrows())
}

pub fn matmul(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    if a.ncols() != b.nrows() {
        return Err(Error::Shape(format!(
            "cannot multiply {}x{} by {}x{}",
            a.nrows(),
            a.ncols(),
            b.nrows(),
            b.ncols()
        )));
    }
    Ok(a * b)
}

/// Singular values in non-increasing order.
pub fn singular_values<T>(a: &DMatrix<T>) -> Vec<f64>
where
    T: ComplexField<RealField = f64>,
{
    if a.is_empty() {
        return Vec::new();
    }
    let mut sv: Vec<f64> = a.clone().svd(false, false).singular_values.iter().copied().collect();
    sv.sort_by(|x, y| y.total_cmp(x));
    sv
}

/// Count of singular values above `rank_rel · σ_max`; zero when
/// `σ_max ≤ eq_abs`.
pub fn numerical_rank<T>(a: &DMatrix<T>, tol: Tolerance) -> usize
where
    T: ComplexField<RealField = f64>,
{
    rank_from_singular_values(&singular_values(a), tol)
}

pub fn rank_from_singular_values(sv: &[f64], tol: Tolerance) -> usize {
    let Some(&max) = sv.iter().max_by(|x, y| x.total_cmp(y)) else {
        return 0;
    };
    if max <= tol.eq_abs {
        return 0;
    }
    let cutoff = tol.rank_rel * max;
    sv.iter().filter(|&&s| s > cutoff).count()
}

/// Largest entrywise deviation `|a_ij − conj(a_ji)|`.
pub fn hermiticity_defect(a: &ComplexMatrix) -> Result<f64> {
    let d = require_square(a, "matrix")?;
    let mut worst = 0.0_f64;
    for i in 0..d {
        for j in i..d {
            worst = worst.max((a[(i, j)] - a[(j, i)].conj()).norm());
        }
    }
    Ok(worst)
}

pub fn is_hermitian(a: &ComplexMatrix, tol: Tolerance) -> Result<bool> {
    Ok(hermiticity_defect(a)? <= tol.eq_abs)
}

/// `(A + A†) / 2`
pub fn hermitian_part(a: &ComplexMatrix) -> ComplexMatrix {
    (a + a.adjoint()) * c64(0.5, 0.0)
}

/// Eigen-decomposition of the Hermitian part of `a`, eigenvalues ascending
/// and eigenvectors as the matching columns.
pub fn hermitian_eigen(a: &ComplexMatrix) -> Result<(Vec<f64>, ComplexMatrix)> {
    let d = require_square(a, "matrix")?;
    let eig = SymmetricEigen::new(hermitian_part(a));
    let mut order: Vec<usize> = (0..d).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vectors = ComplexMatrix::from_fn(d, d, |r, c| eig.eigenvectors[(r, order[c])]);
    Ok((values, vectors))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DensityReport {
    pub hermitian: bool,
    pub unit_trace: bool,
    pub psd: bool,
    pub min_eigenvalue: f64,
}

impl DensityReport {
    pub fn is_valid(&self) -> bool {
        self.hermitian && self.unit_trace && self.psd
    }

    /// Name of the first failed property, if any.
    pub fn failure(&self) -> Option<&'static str> {
        if !self.hermitian {
            Some("hermitian")
        } else if !self.unit_trace {
            Some("unit trace")
        } else if !self.psd {
            Some("positive semidefinite")
        } else {
            None
        }
    }
}

pub fn validate_density(rho: &ComplexMatrix, tol: Tolerance) -> Result<DensityReport> {
    let hermitian = is_hermitian(rho, tol)?;
    let unit_trace = (rho.trace() - c64(1.0, 0.0)).norm() <= tol.eq_abs;
    let (values, _) = hermitian_eigen(rho)?;
    let min_eigenvalue = values.first().copied().unwrap_or(0.0);
    Ok(DensityReport {
        hermitian,
        unit_trace,
        psd: min_eigenvalue >= -tol.eq_abs,
        min_eigenvalue,
    })
}

/// `‖A A† − I‖_F`
pub fn unitarity_defect(a: &ComplexMatrix) -> Result<f64> {
    let d = require_square(a, "unitary")?;
    Ok((a * a.adjoint() - ComplexMatrix::identity(d, d)).norm())
}

pub fn frobenius_distance(a: &ComplexMatrix, b: &ComplexMatrix) -> f64 {
    (a - b).norm()
}

pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    a.kronecker(b)
}

/// `Tr(A B)` without forming the product.
pub fn trace_product(a: &ComplexMatrix, b: &ComplexMatrix) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for i in 0..a.nrows() {
        for k in 0..a.ncols() {
            acc += a[(i, k)] * b[(k, i)];
        }
    }
    acc
}

fn require_bipartite(rho: &ComplexMatrix, m: usize, n: usize) -> Result<()> {
    if m == 0 || n == 0 || rho.nrows() != m * n || rho.ncols() != m * n {
        return Err(Error::Shape(format!(
            "expected a {0}x{0} matrix for a {m}x{n} system, got {1}x{2}",
            m * n,
            rho.nrows(),
            rho.ncols()
        )));
    }
    Ok(())
}

/// Reduced state of the first (slow-index) factor.
pub fn reduce_to_first(rho: &ComplexMatrix, m: usize, n: usize) -> Result<ComplexMatrix> {
    require_bipartite(rho, m, n)?;
    Ok(ComplexMatrix::from_fn(m, m, |a, a2| {
        (0..n).map(|b| rho[(a * n + b, a2 * n + b)]).sum()
    }))
}

/// Reduced state of the second (fast-index) factor.
pub fn reduce_to_second(rho: &ComplexMatrix, m: usize, n: usize) -> Result<ComplexMatrix> {
    require_bipartite(rho, m, n)?;
    Ok(ComplexMatrix::from_fn(n, n, |b, b2| {
        (0..m).map(|a| rho[(a * n + b, a * n + b2)]).sum()
    }))
}

/// Exchanges the two tensor factors: an `m⊗n` operator becomes `n⊗m`.
pub fn swap_subsystems(rho: &ComplexMatrix, m: usize, n: usize) -> Result<ComplexMatrix> {
    require_bipartite(rho, m, n)?;
    Ok(ComplexMatrix::from_fn(m * n, m * n, |r, c| {
        let (b, a) = (r / m, r % m);
        let (b2, a2) = (c / m, c % m);
        rho[(a * n + b, a2 * n + b2)]
    }))
}

/// Real matrix with `max |Im|` at most `eq_abs`, else `None`.
pub fn real_part_checked(a: &ComplexMatrix, eq_abs: f64) -> Option<RealMatrix> {
    if a.iter().any(|z| z.im.abs() > eq_abs) {
        return None;
    }
    Some(a.map(|z| z.re))
}
