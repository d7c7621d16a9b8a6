use nullity::classify::classify_state;
use nullity::linalg::Tolerance;
use nullity::sampler::{
    invariance_search, random_classical_classical, random_classical_quantum, random_density,
    random_quantum_classical, Candidate, Seed, Side,
};

/// The oracle never finds an invariant measurement on a side the rank test
/// rules out, and the reduced eigenbasis always reaches the classical side
/// of a constructed state.
#[test]
fn oracle_never_contradicts_a_rule_out() {
    let tol = Tolerance::default();
    for i in 0..60u64 {
        let (m, n) = [(2, 2), (2, 3), (3, 3)][(i % 3) as usize];
        let s = Seed(0x0AC1E ^ i);
        let (rho, left_classical, right_classical) = match i % 4 {
            0 => (random_classical_quantum(m, n, s).rho, true, false),
            1 => (random_quantum_classical(m, n, s).rho, false, true),
            2 => (random_classical_classical(m, n, s).rho, true, true),
            _ => (random_density(m * n, s), false, false),
        };
        let c = classify_state(&rho, m, n, tol).unwrap();
        let left = invariance_search(&rho, m, n, Side::Left, 200, s).unwrap();
        let right = invariance_search(&rho, m, n, Side::Right, 200, s).unwrap();
        for (ruled_out, report, classical) in [
            (c.classical_quantum.ruled_out, &left, left_classical),
            (c.quantum_classical.ruled_out, &right, right_classical),
        ] {
            assert!(!(ruled_out && classical), "state {i}: false rule-out");
            if ruled_out {
                assert!(report.best_residual > 10.0 * tol.eq_abs, "state {i}: residual {}", report.best_residual);
            }
            if classical {
                assert_eq!(report.best_candidate, Candidate::ReducedEigenbasis, "state {i}");
                assert!(report.best_residual <= 1e-10, "state {i}: residual {}", report.best_residual);
            }
        }
    }
}

#[test]
fn search_is_deterministic_in_the_seed() {
    let rho = random_density(6, Seed(3));
    let a = invariance_search(&rho, 2, 3, Side::Right, 64, Seed(9)).unwrap();
    let b = invariance_search(&rho, 2, 3, Side::Right, 64, Seed(9)).unwrap();
    assert_eq!(a.best_residual.to_bits(), b.best_residual.to_bits());
    assert_eq!(a.best_candidate, b.best_candidate);
}
