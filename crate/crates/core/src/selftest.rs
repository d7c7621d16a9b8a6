//! Reduced-size property corpus behind the `selftest` subcommand.

use std::f64::consts::SQRT_2;

use crate::basis::HermitianBasis;
use crate::bloch::decompose;
use crate::classify::{classify_bell_diagonal, classify_state, BellDiagonalSpec, Classification};
use crate::fixtures::rho0_bloch;
use crate::linalg::{frobenius_distance, numerical_rank, RealMatrix, Tolerance};
use crate::measurement::{build_c, build_c0, consistency_check, VonNeumannMeasurement};
use crate::sampler::{
    invariance_search, random_classical_classical, random_classical_quantum, random_density,
    random_quantum_classical, random_unitary, Seed, Side,
};
use crate::Result;

#[derive(Debug, Clone)]
pub struct SelftestRow {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

fn row(name: &'static str, failures: usize, total: usize) -> SelftestRow {
    SelftestRow {
        name,
        passed: failures == 0,
        detail: format!("{} / {total} ok", total - failures),
    }
}

fn derive(seed: Seed, salt: u64, i: u64) -> Seed {
    Seed(seed.0.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(salt << 32).wrapping_add(i))
}

pub fn run_selftest(seed: Seed, tol: Tolerance) -> Result<Vec<SelftestRow>> {
    let mut rows = Vec::new();

    let diag = |d: &[f64]| RealMatrix::from_diagonal(&nalgebra::DVector::from_column_slice(d));
    let m2 = VonNeumannMeasurement::computational(2).lift(&HermitianBasis::pauli(), tol)?;
    let m3 = VonNeumannMeasurement::computational(3).lift(&HermitianBasis::gell_mann_lambda(), tol)?;
    let ok2 = (&m2.matrix - diag(&[0.0, 0.0, 1.0])).amax() <= 1e-12 && m2.rank(tol) == 1;
    let ok3 = (&m3.matrix - diag(&[0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0, 1.0])).amax() <= 1e-12
        && m3.rank(tol) == 2;
    rows.push(row("computational-basis lifts (m = 2, 3)", [ok2, ok3].iter().filter(|&&b| !b).count(), 2));

    let (mut lift_fail, mut c_fail, mut total) = (0, 0, 0);
    for m in 2..=4 {
        let basis = HermitianBasis::gell_mann(m)?;
        for i in 0..100 {
            total += 1;
            let a = random_unitary(m, derive(seed, m as u64, i));
            let meas = VonNeumannMeasurement::from_unitary(a.clone(), tol)?;
            let lifted = meas.lift(&basis, tol)?;
            if lifted.idempotency_defect() > 1e-9 || lifted.rank(tol) != m - 1 {
                lift_fail += 1;
            }
            let c = build_c(&a, tol)?;
            let c0 = build_c0(&a, tol)?;
            let dev = consistency_check(&meas, &basis, tol)?.max_deviation;
            if numerical_rank(&c, tol) != m - 1
                || numerical_rank(&c0, tol) != m - 1
                || c.row_sum().norm() > 1e-10
                || c0.row_sum().norm() > 1e-10
                || dev > 1e-10
            {
                c_fail += 1;
            }
        }
    }
    rows.push(row("lift idempotent with rank m-1", lift_fail, total));
    rows.push(row("C and C0 rank m-1, rows sum to zero", c_fail, total));

    let rho0_fail = [SQRT_2, 2.0, 10.0]
        .iter()
        .filter(|&&x| {
            let c = Classification::from_bloch(rho0_bloch(x), tol);
            !(c.classical_quantum.computed_rank == 2
                && c.classical_quantum.ruled_out
                && c.quantum_classical.computed_rank == 2
                && c.quantum_classical.ruled_out
                && c.dakic.computed_rank == 2
                && !c.dakic.ruled_out)
        })
        .count();
    rows.push(row("rho0 separates one-sided and correlation screens", rho0_fail, 3));

    let mut bell_fail = 0;
    let classical_points = [
        [0.0, 0.0, 0.0],
        [1.0, 0.0, 0.0],
        [-1.0, 0.0, 0.0],
        [0.0, 1.0, 0.0],
        [0.0, -1.0, 0.0],
        [0.0, 0.0, 1.0],
        [0.0, 0.0, -1.0],
    ];
    let bell_states = [[-1.0, -1.0, -1.0], [-1.0, 1.0, 1.0], [1.0, -1.0, 1.0], [1.0, 1.0, -1.0]];
    for t in classical_points.iter().chain(&bell_states) {
        let spec = BellDiagonalSpec::new(t[0], t[1], t[2], tol)?;
        let verdict = classify_bell_diagonal(&spec, tol);
        let c = Classification::from_bloch(spec.bloch_form(), tol);
        let expect_qq = bell_states.contains(t);
        let both = c.classical_quantum.ruled_out && c.quantum_classical.ruled_out;
        if verdict.quantum_quantum != expect_qq || both != expect_qq {
            bell_fail += 1;
        }
    }
    rows.push(row("Bell-diagonal: 7 classical points, 4 Bell states", bell_fail, 11));

    let mut sound_fail = 0;
    let mut sound_total = 0;
    for (k, &(m, n)) in [(2, 2), (2, 3), (3, 3)].iter().enumerate() {
        for i in 0..50 {
            let s = derive(seed, 100 + k as u64, i);
            sound_total += 3;
            let cq = classify_state(&random_classical_quantum(m, n, s).rho, m, n, tol)?;
            let qc = classify_state(&random_quantum_classical(m, n, s).rho, m, n, tol)?;
            let cc = classify_state(&random_classical_classical(m, n, s).rho, m, n, tol)?;
            sound_fail += usize::from(cq.classical_quantum.ruled_out)
                + usize::from(qc.quantum_classical.ruled_out)
                + usize::from(
                    cc.classical_quantum.ruled_out
                        || cc.quantum_classical.ruled_out
                        || cc.classical_classical.ruled_out,
                );
        }
    }
    rows.push(row("no false rule-outs on constructed classical states", sound_fail, sound_total));

    let mut oracle_fail = 0;
    for i in 0..10u64 {
        let s = derive(seed, 200, i);
        let (rho, constructed) = if i % 2 == 0 {
            (random_classical_quantum(2, 2, s).rho, true)
        } else {
            (random_density(4, s), false)
        };
        let c = classify_state(&rho, 2, 2, tol)?;
        let left = invariance_search(&rho, 2, 2, Side::Left, 200, s)?;
        if constructed && left.best_residual > 1e-10 {
            oracle_fail += 1;
        }
        if c.classical_quantum.ruled_out && left.best_residual <= 0.01 {
            oracle_fail += 1;
        }
    }
    rows.push(row("invariance oracle agrees with rule-outs", oracle_fail, 10));

    let mut rt_fail = 0;
    for (k, &(m, n)) in [(2, 2), (2, 3), (3, 3)].iter().enumerate() {
        let (ba, bb) = (HermitianBasis::gell_mann(m)?, HermitianBasis::gell_mann(n)?);
        for i in 0..20 {
            let rho = random_density(m * n, derive(seed, 300 + k as u64, i));
            let back = decompose(&rho, m, n, &ba, &bb, tol)?.reconstruct();
            if frobenius_distance(&back, &rho) > 1e-12 {
                rt_fail += 1;
            }
        }
    }
    rows.push(row("Bloch round trip", rt_fail, 60));

    Ok(rows)
}
