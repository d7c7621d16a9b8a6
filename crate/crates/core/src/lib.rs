//! Matrix representations of von Neumann measurements and rank-based
//! screens for the nullity of quantum correlation in bipartite states.
//!
//! A von Neumann measurement on an `m`-level system acts linearly on the
//! space of traceless Hermitian operators. Written in an orthonormal basis
//! of that space it becomes a real `(m²−1)×(m²−1)` matrix which is
//! idempotent of rank `m−1`. Applied to the Bloch coefficients `(R, S, T)`
//! of a bipartite state this yields necessary conditions for the state to
//! be classical on one or both sides:
//!
//! * classical-quantum  ⇒ `rank(R | T)   ≤ m − 1`
//! * quantum-classical  ⇒ `rank(S | Tᵀ)  ≤ n − 1`
//! * classical-classical ⇒ `rank([[1, Sᵀ], [R, T]]) ≤ m`
//!
//! Every screen only ever *rules out* a class. Passing a screen is
//! inconclusive.
//!
//! ```
//! use nullity::{basis::HermitianBasis, measurement::VonNeumannMeasurement, Tolerance};
//!
//! let tol = Tolerance::default();
//! let meas = VonNeumannMeasurement::computational(3);
//! let lifted = meas.lift(&HermitianBasis::gell_mann(3).unwrap(), tol).unwrap();
//! assert_eq!(lifted.rank(tol), 2);
//! assert!(lifted.idempotency_defect() < 1e-12);
//! ```

pub mod basis;
pub mod bloch;
pub mod classify;
pub mod cli;
mod error;
pub mod fixtures;
pub mod linalg;
pub mod measurement;
pub mod report;
pub mod sampler;
pub mod selftest;

pub use error::{Error, Result};
pub use linalg::{ComplexMatrix, RealMatrix, Tolerance};
pub use num_complex::Complex64;
