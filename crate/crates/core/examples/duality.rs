//! T ↦ T* on invariants, subtriples and parameters. The sign of θ is
//! preserved.

use triples::invariants::{dual_invariants, dual_subtriple};
use triples::reduction::{dual_parameter, dual_sigma_pair};
use triples::stability::theta_tau;
use triples::{Rational, Result, SubtripleInvariants, TripleInvariants};

fn main() -> Result<()> {
    let t = TripleInvariants::new(3, 2, 5, -1)?;
    let dual = dual_invariants(&t);
    let tau: Rational = "3/2".parse()?;
    let dual_tau = dual_parameter(&t, tau);
    println!("T = {t}, T* = {dual}, tau = {tau}, dual tau = {dual_tau}");
    println!("sigma pair: {:?}", dual_sigma_pair(&t, tau));
    for (a, b, c, d) in [(1, 0, 2, 0), (0, 1, 0, -3), (2, 1, 3, -2), (3, 1, 5, -4)] {
        let sub = SubtripleInvariants::new(a, b, c, d)?;
        let dsub = dual_subtriple(&t, &sub)?;
        println!(
            "  {sub}: theta = {:>6}   dual {dsub}: theta = {:>6}",
            theta_tau(&t, &sub, tau)?.to_string(),
            theta_tau(&dual, &dsub, dual_tau)?.to_string()
        );
    }
    Ok(())
}
