//! Rank screens on the Bloch coefficients of a bipartite state.
//!
//! A verdict with `ruled_out = true` proves the state is not in the target
//! class. `ruled_out = false` is inconclusive and never a certificate of
//! classicality.

use nalgebra::DVector;
use serde::Serialize;

use crate::basis::HermitianBasis;
use crate::bloch::{correlation_matrix, decompose, BlochForm};
use crate::linalg::{c64, numerical_rank, ComplexMatrix, RealMatrix, Tolerance};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TargetClass {
    ClassicalQuantum,
    QuantumClassical,
    ClassicalClassical,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Verdict {
    pub target: TargetClass,
    pub ruled_out: bool,
    pub computed_rank: usize,
    pub threshold: usize,
    pub evidence: RealMatrix,
}

impl Verdict {
    fn from_rank(target: TargetClass, evidence: RealMatrix, threshold: usize, tol: Tolerance) -> Self {
        let computed_rank = numerical_rank(&evidence, tol);
        Self {
            target,
            ruled_out: computed_rank > threshold,
            computed_rank,
            threshold,
            evidence,
        }
    }

    /// `RULED-OUT` or `INCONCLUSIVE`.
    pub fn outcome(&self) -> &'static str {
        if self.ruled_out {
            "RULED-OUT"
        } else {
            "INCONCLUSIVE"
        }
    }
}

fn hcat(left: &DVector<f64>, right: &RealMatrix) -> RealMatrix {
    let mut out = RealMatrix::zeros(right.nrows(), right.ncols() + 1);
    out.set_column(0, left);
    out.view_mut((0, 1), (right.nrows(), right.ncols())).copy_from(right);
    out
}

/// `rank(R | T) ≤ m − 1` for every classical-quantum state.
pub fn check_classical_quantum(bf: &BlochForm, tol: Tolerance) -> Verdict {
    Verdict::from_rank(TargetClass::ClassicalQuantum, hcat(&bf.r, &bf.t), bf.m - 1, tol)
}

/// `rank(S | Tᵀ) ≤ n − 1` for every quantum-classical state.
pub fn check_quantum_classical(bf: &BlochForm, tol: Tolerance) -> Verdict {
    Verdict::from_rank(
        TargetClass::QuantumClassical,
        hcat(&bf.s, &bf.t.transpose()),
        bf.n - 1,
        tol,
    )
}

/// `rank([[1, Sᵀ], [R, T]]) ≤ min(m, n)` for every classical-classical
/// state. Subsystems are swapped first when `m > n`.
pub fn check_classical_classical(bf: &BlochForm, tol: Tolerance) -> Verdict {
    if bf.m > bf.n {
        return check_classical_classical(&bf.swap(), tol);
    }
    Verdict::from_rank(TargetClass::ClassicalClassical, correlation_matrix(bf), bf.m, tol)
}

/// Baseline screen: `rank([[1, Sᵀ], [R, T]]) ≤ m` for classical-quantum
/// states. Strictly weaker than [`check_classical_quantum`], since
/// `rank([[1, Sᵀ], [R, T]]) ≤ rank(R | T) + 1`.
pub fn dakic_condition(bf: &BlochForm, tol: Tolerance) -> Verdict {
    Verdict::from_rank(TargetClass::ClassicalQuantum, correlation_matrix(bf), bf.m, tol)
}

/// Number of entries above `rank_rel · max|x|`, zero when `max|x| ≤ eq_abs`.
/// Agrees with the numerical rank of `diag(x)`.
pub fn count_nonzero(x: &[f64], tol: Tolerance) -> usize {
    let max = x.iter().fold(0.0_f64, |a, v| a.max(v.abs()));
    if max <= tol.eq_abs {
        return 0;
    }
    x.iter().filter(|v| v.abs() > tol.rank_rel * max).count()
}

/// Two-qubit state `¼(I + Σ t_i σ_i⊗σ_i)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BellDiagonalSpec {
    t: [f64; 3],
}

impl BellDiagonalSpec {
    /// Accepts `t` inside the tetrahedron with vertices `(−1,−1,−1)`,
    /// `(−1,1,1)`, `(1,−1,1)`, `(1,1,−1)`; equivalently all four
    /// eigenvalues of the state are nonnegative.
    pub fn new(t1: f64, t2: f64, t3: f64, tol: Tolerance) -> Result<Self> {
        let t = [t1, t2, t3];
        if t.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidState("Bell-diagonal parameters must be finite".into()));
        }
        let lowest = Self::eigenvalues_of(t).into_iter().fold(f64::INFINITY, f64::min);
        if lowest < -tol.eq_abs {
            return Err(Error::InvalidState(format!(
                "({t1}, {t2}, {t3}) lies outside the Bell-diagonal tetrahedron"
            )));
        }
        Ok(Self { t })
    }

    pub fn t(&self) -> [f64; 3] {
        self.t
    }

    /// Eigenvalues times four: `1 − t₁ − t₂ − t₃`, `1 − t₁ + t₂ + t₃`,
    /// `1 + t₁ − t₂ + t₃`, `1 + t₁ + t₂ − t₃`.
    fn eigenvalues_of([a, b, c]: [f64; 3]) -> [f64; 4] {
        [1.0 - a - b - c, 1.0 - a + b + c, 1.0 + a - b + c, 1.0 + a + b - c]
    }

    /// Bloch form in the raw Pauli basis, where `T = diag(t)`.
    pub fn bloch_form(&self) -> BlochForm {
        let raw = HermitianBasis::pauli().scaled(std::f64::consts::SQRT_2);
        BlochForm::new(
            DVector::zeros(3),
            DVector::zeros(3),
            RealMatrix::from_diagonal(&DVector::from_column_slice(&self.t)),
            raw.clone(),
            raw,
        )
        .expect("shapes are fixed")
    }

    pub fn density(&self) -> ComplexMatrix {
        self.bloch_form().reconstruct()
    }

    /// Inside the inscribed octahedron `|t₁| + |t₂| + |t₃| ≤ 1`.
    pub fn is_separable(&self, tol: Tolerance) -> bool {
        self.t.iter().map(|x| x.abs()).sum::<f64>() <= 1.0 + tol.eq_abs
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BellDiagonalVerdict {
    /// More than one nonzero `t_i`: classical on neither side. For this
    /// family the condition is also sufficient, so `false` here means the
    /// state is classical-classical.
    pub quantum_quantum: bool,
    pub separable: bool,
    pub nonzero: usize,
}

pub fn classify_bell_diagonal(spec: &BellDiagonalSpec, tol: Tolerance) -> BellDiagonalVerdict {
    let nonzero = count_nonzero(&spec.t, tol);
    BellDiagonalVerdict {
        quantum_quantum: nonzero > 1,
        separable: spec.is_separable(tol),
        nonzero,
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Rho2Verdict {
    pub classical_quantum: Verdict,
    pub quantum_classical: Verdict,
}

impl Rho2Verdict {
    /// Both one-sided classes excluded, i.e. quantum-quantum.
    pub fn ruled_out(&self) -> bool {
        self.classical_quantum.ruled_out && self.quantum_classical.ruled_out
    }
}

/// `ρ₂ = (1/m²)(I⊗I + Σ t_i μ_i⊗μ_i)` in the Gell-Mann basis, screened with
/// both one-sided checks.
pub fn check_rho2_family(t: &[f64], m: usize, tol: Tolerance) -> Result<Rho2Verdict> {
    let basis = HermitianBasis::gell_mann(m)?;
    if t.len() != basis.len() {
        return Err(Error::Shape(format!(
            "expected {} coefficients for m = {m}, got {}",
            basis.len(),
            t.len()
        )));
    }
    let k = basis.len();
    let bf = BlochForm::new(
        DVector::zeros(k),
        DVector::zeros(k),
        RealMatrix::from_diagonal(&DVector::from_column_slice(t)),
        basis.clone(),
        basis,
    )?;
    Ok(Rho2Verdict {
        classical_quantum: check_classical_quantum(&bf, tol),
        quantum_classical: check_quantum_classical(&bf, tol),
    })
}

/// All screens for one state.
#[derive(Debug, Clone)]
pub struct Classification {
    pub bloch: BlochForm,
    pub classical_quantum: Verdict,
    pub quantum_classical: Verdict,
    pub classical_classical: Verdict,
    pub dakic: Verdict,
}

impl Classification {
    pub fn from_bloch(bloch: BlochForm, tol: Tolerance) -> Self {
        Self {
            classical_quantum: check_classical_quantum(&bloch, tol),
            quantum_classical: check_quantum_classical(&bloch, tol),
            classical_classical: check_classical_classical(&bloch, tol),
            dakic: dakic_condition(&bloch, tol),
            bloch,
        }
    }
}

/// Decomposes in the canonical Gell-Mann bases and runs every screen.
pub fn classify_state(rho: &ComplexMatrix, m: usize, n: usize, tol: Tolerance) -> Result<Classification> {
    let bloch = decompose(
        rho,
        m,
        n,
        &HermitianBasis::gell_mann(m)?,
        &HermitianBasis::gell_mann(n)?,
        tol,
    )?;
    Ok(Classification::from_bloch(bloch, tol))
}

/// `(U ⊗ V) ρ (U ⊗ V)†`
pub fn conjugate(rho: &ComplexMatrix, local: &ComplexMatrix) -> ComplexMatrix {
    local * rho * local.adjoint()
}

/// Maximally mixed `d×d` state.
pub fn maximally_mixed(d: usize) -> ComplexMatrix {
    ComplexMatrix::identity(d, d) * c64(1.0 / d as f64, 0.0)
}
