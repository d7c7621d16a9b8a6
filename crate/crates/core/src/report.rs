//! JSON file formats and the serializable classification report.
//!
//! Complex numbers are `[re, im]` pairs and matrices are row-major flat
//! lists of them:
//!
//! ```json
//! { "m": 2, "n": 2, "rho": [[0.25, 0.0], [0.0, 0.0], ...] }
//! { "m": 2, "u": [[0.7071067811865476, 0.0], ...] }
//! ```

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::basis::HermitianBasis;
use crate::classify::{Classification, TargetClass, Verdict};
use crate::linalg::{c64, from_row_major, ComplexMatrix, DensityReport, RealMatrix, Tolerance};
use crate::sampler::{Candidate, InvarianceReport, Side};
use crate::{Error, Result};

pub type Entry = [f64; 2];

pub fn entries_of(a: &ComplexMatrix) -> Vec<Entry> {
    let mut out = Vec::with_capacity(a.len());
    for i in 0..a.nrows() {
        for j in 0..a.ncols() {
            let z = a[(i, j)];
            out.push([z.re, z.im]);
        }
    }
    out
}

fn matrix_of(rows: usize, cols: usize, entries: &[Entry]) -> Result<ComplexMatrix> {
    let values: Vec<_> = entries.iter().map(|&[re, im]| c64(re, im)).collect();
    from_row_major(rows, cols, &values)
}

pub fn rows_of(a: &RealMatrix) -> Vec<Vec<f64>> {
    a.row_iter().map(|r| r.iter().copied().collect()).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateFile {
    pub m: usize,
    pub n: usize,
    pub rho: Vec<Entry>,
}

impl StateFile {
    pub fn from_matrix(rho: &ComplexMatrix, m: usize, n: usize) -> Self {
        Self {
            m,
            n,
            rho: entries_of(rho),
        }
    }

    pub fn matrix(&self) -> Result<ComplexMatrix> {
        if self.m == 0 || self.n == 0 {
            return Err(Error::Shape("m and n must be positive".into()));
        }
        let d = self.m * self.n;
        matrix_of(d, d, &self.rho)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct UnitaryFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    pub u: Vec<Entry>,
}

impl UnitaryFile {
    /// Dimension from `dim_hint`, the `m` field, or the entry count, which
    /// must agree when more than one is present.
    pub fn matrix(&self, dim_hint: Option<usize>) -> Result<ComplexMatrix> {
        let inferred = (self.u.len() as f64).sqrt().round() as usize;
        let m = dim_hint.or(self.m).unwrap_or(inferred);
        if let (Some(a), Some(b)) = (dim_hint, self.m) {
            if a != b {
                return Err(Error::Shape(format!("--dim {a} disagrees with m = {b} in the file")));
            }
        }
        matrix_of(m, m, &self.u)
    }
}

pub fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> std::result::Result<T, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))
}

#[derive(Debug, Clone, Serialize)]
pub struct BasisElementJson {
    pub label: String,
    pub matrix: Vec<Entry>,
}

#[derive(Debug, Clone, Serialize)]
pub struct BasisJson {
    pub m: usize,
    pub elements: Vec<BasisElementJson>,
}

impl From<&HermitianBasis> for BasisJson {
    fn from(b: &HermitianBasis) -> Self {
        Self {
            m: b.dim(),
            elements: b
                .elements()
                .iter()
                .zip(b.labels())
                .map(|(w, l)| BasisElementJson {
                    label: l.to_string(),
                    matrix: entries_of(w),
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct VerdictJson {
    pub target: TargetClass,
    pub outcome: &'static str,
    pub ruled_out: bool,
    pub computed_rank: usize,
    pub threshold: usize,
    pub evidence: Vec<Vec<f64>>,
}

impl From<&Verdict> for VerdictJson {
    fn from(v: &Verdict) -> Self {
        Self {
            target: v.target,
            outcome: v.outcome(),
            ruled_out: v.ruled_out,
            computed_rank: v.computed_rank,
            threshold: v.threshold,
            evidence: rows_of(&v.evidence),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct InvarianceJson {
    pub side: Side,
    pub best_residual: f64,
    pub best_candidate: Candidate,
    pub trials: usize,
    pub degenerate_reduced_spectrum: bool,
    pub best_measurement: Vec<Entry>,
}

impl From<&InvarianceReport> for InvarianceJson {
    fn from(r: &InvarianceReport) -> Self {
        Self {
            side: r.side,
            best_residual: r.best_residual,
            best_candidate: r.best_candidate,
            trials: r.trials,
            degenerate_reduced_spectrum: r.degenerate_reduced_spectrum,
            best_measurement: entries_of(r.best_measurement.unitary()),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct InputDescriptor {
    pub file: String,
    pub m: usize,
    pub n: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct OracleJson {
    pub seed: u64,
    pub left: InvarianceJson,
    pub right: InvarianceJson,
}

/// Output of `classify --json`. Field order is fixed by declaration order.
#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub input: InputDescriptor,
    pub tolerances: Tolerance,
    pub density: DensityReport,
    pub classical_quantum: VerdictJson,
    pub quantum_classical: VerdictJson,
    pub classical_classical: VerdictJson,
    pub dakic: Option<VerdictJson>,
    pub oracle: Option<OracleJson>,
}

impl Report {
    pub fn new(
        input: InputDescriptor,
        tolerances: Tolerance,
        density: DensityReport,
        c: &Classification,
        oracle: Option<OracleJson>,
    ) -> Self {
        Self {
            input,
            tolerances,
            density,
            classical_quantum: (&c.classical_quantum).into(),
            quantum_classical: (&c.quantum_classical).into(),
            classical_classical: (&c.classical_classical).into(),
            dakic: Some((&c.dakic).into()),
            oracle,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampler::{random_density, Seed};

    #[test]
    fn state_file_round_trip() {
        let rho = random_density(6, Seed(1));
        let file = StateFile::from_matrix(&rho, 2, 3);
        let text = serde_json::to_string(&file).unwrap();
        let back: StateFile = serde_json::from_str(&text).unwrap();
        assert_eq!(back.matrix().unwrap(), rho);
    }

    #[test]
    fn state_file_length_checked() {
        let file = StateFile {
            m: 2,
            n: 2,
            rho: vec![[0.0, 0.0]; 15],
        };
        assert!(matches!(file.matrix(), Err(Error::Shape(_))));
        assert!(serde_json::from_str::<StateFile>(r#"{"m":2,"n":2,"rho":[],"x":1}"#).is_err());
    }

    #[test]
    fn unitary_file_dimension() {
        let file: UnitaryFile = serde_json::from_str(r#"{"u":[[1,0],[0,0],[0,0],[1,0]]}"#).unwrap();
        assert_eq!(file.matrix(None).unwrap(), ComplexMatrix::identity(2, 2));
        assert!(file.matrix(Some(3)).is_err());
        let tagged = UnitaryFile {
            m: Some(2),
            u: file.u.clone(),
        };
        assert!(tagged.matrix(Some(3)).is_err());
        assert!(tagged.matrix(Some(2)).is_ok());
    }

    #[test]
    fn basis_json_labels() {
        let json = BasisJson::from(&HermitianBasis::gell_mann(2).unwrap());
        let labels: Vec<_> = json.elements.iter().map(|e| e.label.as_str()).collect();
        assert_eq!(labels, ["diagonal(1)", "symmetric(0,1)", "antisymmetric(0,1)"]);
        assert_eq!(json.elements[0].matrix.len(), 4);
    }
}
