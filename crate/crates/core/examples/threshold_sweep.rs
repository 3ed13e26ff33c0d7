//! Solvability switches on at σ = d1 − d2.

use std::f64::consts::PI;

use triples::vortex::{sweep_sigma, PhiProfile, SolveOptions, SweepTemplate};

fn main() -> triples::Result<()> {
    let sigmas = [-0.5, 0.0, 0.5, 1.0, 1.5, 2.0, 3.0];
    for (d1, d2) in [(0, 0), (1, 0)] {
        let template = SweepTemplate {
            n: 64,
            d1,
            d2,
            profile: PhiProfile::Cosine { level: PI, amplitude: PI / 2.0 },
            options: SolveOptions::default(),
        };
        let table = sweep_sigma(&template, &sigmas)?;
        println!("d1 - d2 = {}:", d1 - d2);
        for row in &table.rows {
            println!("  sigma = {:>4}: {:<13} residual {:.1e}", row.sigma, row.status, row.residual_sup);
        }
        println!("  monotone: {}, switch at d1 - d2: {}", table.monotone, table.threshold_consistent);
    }
    Ok(())
}
