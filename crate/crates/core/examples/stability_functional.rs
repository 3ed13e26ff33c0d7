//! θ_τ of a few subtriples of T = (2,1,2,0), and the verdict they give.

use triples::stability::{classify_line_pair, evaluate_stability, sigma_from_tau, theta_tau};
use triples::{Rational, Result, SubtripleInvariants, TripleInvariants};

fn main() -> Result<()> {
    let t = TripleInvariants::new(2, 1, 2, 0)?;
    let candidates = [
        SubtripleInvariants::new(1, 0, 1, 0)?,
        SubtripleInvariants::new(0, 1, 0, -1)?,
        SubtripleInvariants::new(1, 1, 1, 0)?,
        SubtripleInvariants::new(2, 0, 2, 0)?,
    ];
    for tau in ["5/4", "3/2", "7/4"] {
        let tau: Rational = tau.parse()?;
        println!("tau = {tau} (sigma = {})", sigma_from_tau(&t, tau));
        for c in &candidates {
            println!("  theta{c} = {}", theta_tau(&t, c, tau)?);
        }
        let v = evaluate_stability(&t, tau, &candidates)?;
        println!("  verdict: {:?}, witness {:?}", v.status, v.witness.map(|w| w.to_string()));
    }

    let pair = TripleInvariants::new(1, 1, 3, 1)?;
    for tau in [2, 3, 4] {
        let v = classify_line_pair(&pair, Rational::from(tau), true)?;
        println!("line pair {pair} at tau = {tau}: {:?}", v.status);
    }
    Ok(())
}
