//! Slopes of the extension over X × P¹ against σ-slopes of the triple.

use triples::reduction::{check_slope_equivalence, extension_invariants, subextension_slope};
use triples::{Rational, Result, SubtripleInvariants, TripleInvariants};

fn main() -> Result<()> {
    let t = TripleInvariants::new(1, 1, 1, 0)?;
    let e1 = SubtripleInvariants::new(1, 0, 1, 0)?;
    for sigma in [1, 2, 3] {
        let sigma = Rational::from(sigma);
        let ext = extension_invariants(&t, sigma)?;
        let eq = check_slope_equivalence(&t, &e1, sigma)?;
        println!(
            "sigma = {sigma}: F has rank {} slope {}; F' slope {}; tests {:?}",
            ext.rank,
            ext.slope,
            subextension_slope(&e1, sigma)?,
            (eq.f_slope_test, eq.theta_test, eq.sigma_slope_test)
        );
    }
    Ok(())
}
