//! Seeded random unitaries and states, states that are classical by
//! construction, and a brute-force search for a measurement that leaves a
//! state invariant.
//!
//! Everything here is a pure function of its arguments and a [`Seed`].
//! Per-trial randomness in [`invariance_search`] uses one ChaCha stream per
//! trial index, so the parallel search returns the same report as a serial
//! loop would.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp1, StandardNormal};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::linalg::{
    c64, hermitian_eigen, kron, reduce_to_first, reduce_to_second, require_square,
    swap_subsystems, ComplexMatrix, RealMatrix, Tolerance,
};
use crate::measurement::VonNeumannMeasurement;
use crate::{Error, Result};

/// Minimum spacing enforced between the probabilities that weight the
/// classical branches of a constructed state. Keeps the reduced spectrum
/// nondegenerate so its eigenbasis recovers the generating measurement.
pub const MIN_SPECTRAL_GAP: f64 = 0.01;

/// Reduced spectra with a gap below this are flagged as degenerate.
pub const DEGENERACY_GAP: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Seed(pub u64);

impl Seed {
    pub fn rng(self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.0)
    }

    /// Independent stream for the `index`-th unit of work under this seed.
    pub fn stream(self, index: u64) -> ChaCha8Rng {
        let mut rng = self.rng();
        rng.set_stream(index.wrapping_add(1));
        rng
    }
}

fn gaussian_matrix<R: Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> ComplexMatrix {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    ComplexMatrix::from_fn(rows, cols, |_, _| {
        let re: f64 = StandardNormal.sample(rng);
        let im: f64 = StandardNormal.sample(rng);
        c64(s * re, s * im)
    })
}

/// Haar-distributed unitary: QR of a complex Gaussian matrix with the phases
/// of `R`'s diagonal folded back into `Q`.
pub fn random_unitary_with<R: Rng + ?Sized>(m: usize, rng: &mut R) -> ComplexMatrix {
    loop {
        let g = gaussian_matrix(m, m, rng);
        let qr = g.qr();
        let (q, r) = (qr.q(), qr.r());
        if (0..m).any(|i| r[(i, i)].norm() < 1e-12) {
            continue;
        }
        let phases = ComplexMatrix::from_diagonal(&nalgebra::DVector::from_fn(m, |i, _| {
            let d = r[(i, i)];
            d / d.norm()
        }));
        return q * phases;
    }
}

pub fn random_unitary(m: usize, seed: Seed) -> ComplexMatrix {
    random_unitary_with(m, &mut seed.rng())
}

/// Haar-distributed real orthogonal matrix.
pub fn random_orthogonal(d: usize, seed: Seed) -> RealMatrix {
    let mut rng = seed.rng();
    loop {
        let g = RealMatrix::from_fn(d, d, |_, _| StandardNormal.sample(&mut rng));
        let qr = g.qr();
        let (q, r) = (qr.q(), qr.r());
        if (0..d).any(|i| r[(i, i)].abs() < 1e-12) {
            continue;
        }
        let signs = RealMatrix::from_diagonal(&nalgebra::DVector::from_fn(d, |i, _| {
            r[(i, i)].signum()
        }));
        return q * signs;
    }
}

/// `G G† / Tr(G G†)` for a complex Gaussian `G`.
pub fn random_density_with<R: Rng + ?Sized>(d: usize, rng: &mut R) -> ComplexMatrix {
    let g = gaussian_matrix(d, d, rng);
    let p = &g * g.adjoint();
    let tr = p.trace();
    p / tr
}

pub fn random_density(d: usize, seed: Seed) -> ComplexMatrix {
    random_density_with(d, &mut seed.rng())
}

/// Uniform point on the probability simplex (normalized exponentials).
pub fn random_probabilities<R: Rng + ?Sized>(k: usize, rng: &mut R) -> Vec<f64> {
    let raw: Vec<f64> = (0..k).map(|_| Exp1.sample(rng)).collect();
    let total: f64 = raw.iter().sum();
    raw.into_iter().map(|x| x / total).collect()
}

fn min_gap(values: &[f64]) -> f64 {
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    sorted
        .windows(2)
        .map(|w| w[1] - w[0])
        .fold(f64::INFINITY, f64::min)
}

fn nondegenerate_probabilities<R: Rng + ?Sized>(k: usize, rng: &mut R) -> Vec<f64> {
    loop {
        let p = random_probabilities(k, rng);
        if min_gap(&p) >= MIN_SPECTRAL_GAP {
            return p;
        }
    }
}

/// A sampled state together with the measurements it is invariant under.
#[derive(Debug, Clone)]
pub struct SampledState {
    pub rho: ComplexMatrix,
    pub m: usize,
    pub n: usize,
    pub left: Option<VonNeumannMeasurement>,
    pub right: Option<VonNeumannMeasurement>,
}

fn exact_measurement(u: ComplexMatrix) -> VonNeumannMeasurement {
    VonNeumannMeasurement::from_unitary(u, Tolerance::default())
        .expect("sampled unitary passes the default unitarity check")
}

/// `Σ_i p_i |φ_i⟩⟨φ_i| ⊗ ρ_i` with distinct `p_i`.
pub fn random_classical_quantum(m: usize, n: usize, seed: Seed) -> SampledState {
    let mut rng = seed.rng();
    let meas = exact_measurement(random_unitary_with(m, &mut rng));
    let p = nondegenerate_probabilities(m, &mut rng);
    let rho = (0..m).fold(ComplexMatrix::zeros(m * n, m * n), |acc, i| {
        let local = random_density_with(n, &mut rng);
        acc + kron(&meas.projector(i), &local) * c64(p[i], 0.0)
    });
    SampledState {
        rho,
        m,
        n,
        left: Some(meas),
        right: None,
    }
}

/// Subsystem swap of a classical-quantum `n⊗m` sample.
pub fn random_quantum_classical(m: usize, n: usize, seed: Seed) -> SampledState {
    let cq = random_classical_quantum(n, m, seed);
    SampledState {
        rho: swap_subsystems(&cq.rho, n, m).expect("sampled shape is consistent"),
        m,
        n,
        left: None,
        right: cq.left,
    }
}

/// `Σ_ij p_ij |φ_i⟩⟨φ_i| ⊗ |ψ_j⟩⟨ψ_j|` with nondegenerate marginals.
pub fn random_classical_classical(m: usize, n: usize, seed: Seed) -> SampledState {
    let mut rng = seed.rng();
    let left = exact_measurement(random_unitary_with(m, &mut rng));
    let right = exact_measurement(random_unitary_with(n, &mut rng));
    let p = loop {
        let p = random_probabilities(m * n, &mut rng);
        let row: Vec<f64> = (0..m).map(|i| (0..n).map(|j| p[i * n + j]).sum()).collect();
        let col: Vec<f64> = (0..n).map(|j| (0..m).map(|i| p[i * n + j]).sum()).collect();
        if min_gap(&row) >= MIN_SPECTRAL_GAP && min_gap(&col) >= MIN_SPECTRAL_GAP {
            break p;
        }
    };
    let mut rho = ComplexMatrix::zeros(m * n, m * n);
    for i in 0..m {
        let pa = left.projector(i);
        for j in 0..n {
            rho += kron(&pa, &right.projector(j)) * c64(p[i * n + j], 0.0);
        }
    }
    SampledState {
        rho,
        m,
        n,
        left: Some(left),
        right: Some(right),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Left,
    Right,
}

/// `‖(𝓜⊗I)ρ(𝓜†⊗I) − ρ‖_F` (or the mirrored right-side expression).
///
/// In the measurement basis the dephased state keeps only the blocks that
/// are diagonal in the measured index, so the residual is the norm of the
/// off-diagonal blocks.
pub fn invariance_residual(
    rho: &ComplexMatrix,
    m: usize,
    n: usize,
    side: Side,
    meas: &VonNeumannMeasurement,
) -> Result<f64> {
    let d = require_square(rho, "state")?;
    let local = match side {
        Side::Left => m,
        Side::Right => n,
    };
    if d != m * n || meas.dim() != local {
        return Err(Error::Shape(format!(
            "state is {d}x{d} and measurement is {0}x{0} for a {m}x{n} system on the {side:?} side",
            meas.dim()
        )));
    }
    let v = meas.vectors();
    let w = match side {
        Side::Left => kron(&v, &ComplexMatrix::identity(n, n)),
        Side::Right => kron(&ComplexMatrix::identity(m, m), &v),
    };
    let rotated = w.adjoint() * rho * &w;
    let index = |k: usize| match side {
        Side::Left => k / n,
        Side::Right => k % n,
    };
    let mut acc = 0.0;
    for r in 0..d {
        for c in 0..d {
            if index(r) != index(c) {
                acc += rotated[(r, c)].norm_sqr();
            }
        }
    }
    Ok(acc.sqrt())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Candidate {
    ReducedEigenbasis,
    Random { trial: usize },
}

#[derive(Debug, Clone)]
pub struct InvarianceReport {
    pub side: Side,
    pub best_residual: f64,
    pub best_measurement: VonNeumannMeasurement,
    pub best_candidate: Candidate,
    pub trials: usize,
    /// The reduced state on the measured side has (near-)repeated
    /// eigenvalues, so its eigenbasis is not a reliable candidate.
    pub degenerate_reduced_spectrum: bool,
}

/// Minimizes the invariance residual over the reduced-state eigenbasis and
/// `trials` Haar-random measurements.
pub fn invariance_search(
    rho: &ComplexMatrix,
    m: usize,
    n: usize,
    side: Side,
    trials: usize,
    seed: Seed,
) -> Result<InvarianceReport> {
    if trials == 0 {
        return Err(Error::Domain("invariance search needs at least one trial".into()));
    }
    let (reduced, local) = match side {
        Side::Left => (reduce_to_first(rho, m, n)?, m),
        Side::Right => (reduce_to_second(rho, m, n)?, n),
    };
    let (values, vectors) = hermitian_eigen(&reduced)?;
    let degenerate = min_gap(&values) < DEGENERACY_GAP;
    // Eigenvectors from the Hermitian solver are orthonormal to round-off.
    let loose = Tolerance {
        rank_rel: 1e-9,
        eq_abs: 1e-8,
    };
    let eigen_meas = VonNeumannMeasurement::from_columns(&vectors, loose)?;
    let eigen_residual = invariance_residual(rho, m, n, side, &eigen_meas)?;

    let best_random = (0..trials)
        .into_par_iter()
        .map(|t| {
            let u = random_unitary_with(local, &mut seed.stream(t as u64));
            let meas = VonNeumannMeasurement::from_unitary(u, loose)?;
            let r = invariance_residual(rho, m, n, side, &meas)?;
            Ok((r, t, meas))
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .min_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)))
        .expect("at least one trial");

    let (best_residual, best_measurement, best_candidate) = if eigen_residual <= best_random.0 {
        (eigen_residual, eigen_meas, Candidate::ReducedEigenbasis)
    } else {
        (
            best_random.0,
            best_random.2,
            Candidate::Random {
                trial: best_random.1,
            },
        )
    };
    Ok(InvarianceReport {
        side,
        best_residual,
        best_measurement,
        best_candidate,
        trials,
        degenerate_reduced_spectrum: degenerate,
    })
}

/// Kronecker product `U ⊗ V` of two independently sampled local unitaries.
pub fn random_local_unitary(m: usize, n: usize, seed: Seed) -> DMatrix<Complex64> {
    let mut rng = seed.rng();
    let u = random_unitary_with(m, &mut rng);
    let v = random_unitary_with(n, &mut rng);
    kron(&u, &v)
}
