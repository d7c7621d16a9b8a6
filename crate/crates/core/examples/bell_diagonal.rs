//! Walks the Bell-diagonal tetrahedron: the origin and the octahedron
//! vertices are classical on both sides, anything with two or more nonzero
//! correlations is quantum on both sides.

use nullity::classify::{classify_bell_diagonal, BellDiagonalSpec};
use nullity::Tolerance;

fn main() -> nullity::Result<()> {
    let tol = Tolerance::default();
    let points = [
        [0.0, 0.0, 0.0],
        [1.0, 0.0, 0.0],
        [0.0, -1.0, 0.0],
        [0.0, 0.0, 1.0],
        [0.5, 0.3, 0.0],
        [0.2, 0.2, 0.2],
        [-0.6, -0.6, -0.6],
        [1.0, 1.0, -1.0],
    ];
    for [t1, t2, t3] in points {
        let spec = BellDiagonalSpec::new(t1, t2, t3, tol)?;
        let v = classify_bell_diagonal(&spec, tol);
        println!(
            "t = ({t1:+.1}, {t2:+.1}, {t3:+.1}): nonzero {}, quantum-quantum {:5}, separable {}",
            v.nonzero, v.quantum_quantum, v.separable
        );
    }
    Ok(())
}
