//! Cross-checks the rank screens against a brute-force search for a local
//! measurement that leaves the state unchanged.

use nullity::classify::classify_state;
use nullity::sampler::{invariance_search, random_classical_quantum, random_density, Seed, Side};
use nullity::Tolerance;

fn main() -> nullity::Result<()> {
    let tol = Tolerance::default();
    let (m, n) = (2, 3);
    let states = [
        ("classical-quantum", random_classical_quantum(m, n, Seed(1)).rho),
        ("random", random_density(m * n, Seed(1))),
    ];
    for (name, rho) in states {
        let c = classify_state(&rho, m, n, tol)?;
        for (side, verdict) in [(Side::Left, &c.classical_quantum), (Side::Right, &c.quantum_classical)] {
            let r = invariance_search(&rho, m, n, side, 2000, Seed(7))?;
            println!(
                "{name:<18} {side:?}: screen {:<12} best residual {:.3e} ({:?})",
                verdict.outcome(),
                r.best_residual,
                r.best_candidate
            );
        }
    }
    Ok(())
}
