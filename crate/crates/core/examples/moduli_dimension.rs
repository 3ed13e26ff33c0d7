//! Expected dimension of the moduli space and the fibration bound.

use triples::chambers::{fibration_bound, moduli_dimension};
use triples::invariants::dual_invariants;
use triples::{Result, TripleInvariants};

fn main() -> Result<()> {
    for (r1, r2, d1, d2) in [(2, 1, 2, 0), (1, 1, 3, 0), (2, 2, 7, 1), (3, 2, 9, -2)] {
        let t = TripleInvariants::new(r1, r2, d1, d2)?;
        let dims: Vec<String> = (0..=4).map(|g| moduli_dimension(&t, g).to_string()).collect();
        println!(
            "{t}: dim for g = 0..4: {}; dual agrees: {}; fibration bound at g = 2: {}",
            dims.join(" "),
            (0..=4).all(|g| moduli_dimension(&t, g) == moduli_dimension(&dual_invariants(&t), g)),
            fibration_bound(&t, 2)
        );
    }
    Ok(())
}
