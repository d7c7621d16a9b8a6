//! Bloch representation of bipartite operators:
//!
//! `ρ = (1/mn)(I⊗I + Σ r_i μ_i⊗I + Σ s_j I⊗ν_j + Σ t_ij μ_i⊗ν_j)`
//!
//! Subsystem A (dimension `m`) is the slow, left tensor factor. Bases only
//! need to be orthogonal; coefficients are divided by each element's squared
//! Hilbert-Schmidt norm, so a uniformly rescaled basis (raw Pauli matrices,
//! say) yields the coefficients written in terms of those matrices.

use nalgebra::DVector;

use crate::basis::HermitianBasis;
use crate::linalg::{
    c64, hermiticity_defect, reduce_to_first, reduce_to_second, trace_product, ComplexMatrix,
    RealMatrix, Tolerance,
};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct BlochForm {
    pub m: usize,
    pub n: usize,
    pub r: DVector<f64>,
    pub s: DVector<f64>,
    pub t: RealMatrix,
    pub basis_a: HermitianBasis,
    pub basis_b: HermitianBasis,
}

impl BlochForm {
    pub fn new(
        r: DVector<f64>,
        s: DVector<f64>,
        t: RealMatrix,
        basis_a: HermitianBasis,
        basis_b: HermitianBasis,
    ) -> Result<Self> {
        let (m, n) = (basis_a.dim(), basis_b.dim());
        let (ka, kb) = (m * m - 1, n * n - 1);
        if r.len() != ka || s.len() != kb || t.nrows() != ka || t.ncols() != kb {
            return Err(Error::Shape(format!(
                "a {m}x{n} Bloch form needs R of length {ka}, S of length {kb} and T of shape \
                 {ka}x{kb}; got {}, {} and {}x{}",
                r.len(),
                s.len(),
                t.nrows(),
                t.ncols()
            )));
        }
        Ok(Self {
            m,
            n,
            r,
            s,
            t,
            basis_a,
            basis_b,
        })
    }

    /// Same state with the subsystems exchanged: `(n, m, S, R, Tᵀ)`.
    pub fn swap(&self) -> Self {
        Self {
            m: self.n,
            n: self.m,
            r: self.s.clone(),
            s: self.r.clone(),
            t: self.t.transpose(),
            basis_a: self.basis_b.clone(),
            basis_b: self.basis_a.clone(),
        }
    }

    pub fn reconstruct(&self) -> ComplexMatrix {
        reconstruct(self)
    }

    pub fn correlation_matrix(&self) -> RealMatrix {
        correlation_matrix(self)
    }
}

fn norms(b: &HermitianBasis, tol: Tolerance, which: &str) -> Result<Vec<f64>> {
    b.orthogonal_norms(tol)
        .ok_or_else(|| Error::Domain(format!("basis for subsystem {which} is not orthogonal")))
}

fn real_coefficient(z: num_complex::Complex64, tol: f64, what: &str) -> Result<f64> {
    if z.im.abs() > tol {
        return Err(Error::NotHermitian(format!(
            "{what} has imaginary part {:.3e}",
            z.im
        )));
    }
    Ok(z.re)
}

/// Extracts `(R, S, T)` from an `(mn)×(mn)` Hermitian operator.
pub fn decompose(
    rho: &ComplexMatrix,
    m: usize,
    n: usize,
    basis_a: &HermitianBasis,
    basis_b: &HermitianBasis,
    tol: Tolerance,
) -> Result<BlochForm> {
    if basis_a.dim() != m || basis_b.dim() != n {
        return Err(Error::Shape(format!(
            "bases have dimensions {} and {}, state is {m}x{n}",
            basis_a.dim(),
            basis_b.dim()
        )));
    }
    if rho.nrows() != m * n || rho.ncols() != m * n {
        return Err(Error::Shape(format!(
            "expected a {0}x{0} matrix for a {m}x{n} system, got {1}x{2}",
            m * n,
            rho.nrows(),
            rho.ncols()
        )));
    }
    let defect = hermiticity_defect(rho)?;
    if defect > tol.eq_abs {
        return Err(Error::NotHermitian(format!(
            "state deviates from its adjoint by {defect:.3e}"
        )));
    }
    let na = norms(basis_a, tol, "A")?;
    let nb = norms(basis_b, tol, "B")?;
    let (mf, nf) = (m as f64, n as f64);

    let rho_a = reduce_to_first(rho, m, n)?;
    let rho_b = reduce_to_second(rho, m, n)?;

    let r = basis_a
        .elements()
        .iter()
        .zip(&na)
        .enumerate()
        .map(|(i, (mu, &norm))| {
            let z = trace_product(&rho_a, mu) * (mf / norm);
            real_coefficient(z, tol.eq_abs, &format!("r_{}", i + 1))
        })
        .collect::<Result<Vec<_>>>()?;
    let s = basis_b
        .elements()
        .iter()
        .zip(&nb)
        .enumerate()
        .map(|(j, (nu, &norm))| {
            let z = trace_product(&rho_b, nu) * (nf / norm);
            real_coefficient(z, tol.eq_abs, &format!("s_{}", j + 1))
        })
        .collect::<Result<Vec<_>>>()?;

    let mut t = RealMatrix::zeros(basis_a.len(), basis_b.len());
    for (i, mu) in basis_a.elements().iter().enumerate() {
        // Tr_A[(μ ⊗ I) ρ]
        let contracted = ComplexMatrix::from_fn(n, n, |b, b2| {
            let mut acc = c64(0.0, 0.0);
            for a in 0..m {
                for a2 in 0..m {
                    acc += mu[(a2, a)] * rho[(a * n + b, a2 * n + b2)];
                }
            }
            acc
        });
        for (j, nu) in basis_b.elements().iter().enumerate() {
            let z = trace_product(&contracted, nu) * (mf * nf / (na[i] * nb[j]));
            t[(i, j)] = real_coefficient(z, tol.eq_abs, &format!("t_{}{}", i + 1, j + 1))?;
        }
    }

    BlochForm::new(
        DVector::from_vec(r),
        DVector::from_vec(s),
        t,
        basis_a.clone(),
        basis_b.clone(),
    )
}

/// Reassembles the operator. Always Hermitian with unit trace; positivity is
/// the caller's concern.
pub fn reconstruct(bf: &BlochForm) -> ComplexMatrix {
    let (m, n) = (bf.m, bf.n);
    let id_a = ComplexMatrix::identity(m, m);
    let id_b = ComplexMatrix::identity(n, n);
    let local_a = bf.basis_a.combine(bf.r.as_slice());
    let local_b = bf.basis_b.combine(bf.s.as_slice());
    let mut acc = id_a.kronecker(&id_b) + local_a.kronecker(&id_b) + id_a.kronecker(&local_b);
    for (i, mu) in bf.basis_a.elements().iter().enumerate() {
        let row: Vec<f64> = bf.t.row(i).iter().copied().collect();
        if row.iter().all(|&x| x == 0.0) {
            continue;
        }
        acc += mu.kronecker(&bf.basis_b.combine(&row));
    }
    acc / c64((m * n) as f64, 0.0)
}

/// `[[1, Sᵀ], [R, T]]`, shape `m² × n²`.
pub fn correlation_matrix(bf: &BlochForm) -> RealMatrix {
    let (ka, kb) = (bf.r.len(), bf.s.len());
    let mut c = RealMatrix::zeros(ka + 1, kb + 1);
    c[(0, 0)] = 1.0;
    for j in 0..kb {
        c[(0, j + 1)] = bf.s[j];
    }
    for i in 0..ka {
        c[(i + 1, 0)] = bf.r[i];
    }
    c.view_mut((1, 1), (ka, kb)).copy_from(&bf.t);
    c
}
