//! Walls, chambers and genericity for a few small triples.

use triples::chambers::{enumerate_walls, is_generic, projectivity_flags, sigma_interval, small_tau_window};
use triples::{Rational, Result, TripleInvariants};

fn main() -> Result<()> {
    for (r1, r2, d1, d2) in [(2, 1, 2, 0), (1, 2, 3, 0), (2, 2, 5, 1), (3, 1, 4, -2)] {
        let t = TripleInvariants::new(r1, r2, d1, d2)?;
        let dec = enumerate_walls(&t, 6)?;
        let show = |x: Option<Rational>| x.map_or("inf".to_string(), |u| u.to_string());
        let sig = sigma_interval(&t);
        println!(
            "{t}: tau in ({}, {}), sigma in ({}, {})",
            dec.interval.lower,
            show(dec.interval.upper),
            sig.lower,
            show(sig.upper)
        );
        println!("  walls: {}", dec.walls.iter().map(|w| w.to_string()).collect::<Vec<_>>().join(", "));
        println!("  chambers: {}", dec.chambers().len());
        println!("  no walls within {} of mu(E1)", small_tau_window(&t));
        if let Some(&w) = dec.walls.first() {
            let mid = (dec.interval.lower + w) / Rational::from(2);
            println!(
                "  tau = {mid}: generic {}, {:?}; tau = {w}: generic {}",
                is_generic(&t, mid, 6)?,
                projectivity_flags(&t, mid, 6)?,
                is_generic(&t, w, 6)?
            );
        }
    }
    Ok(())
}
