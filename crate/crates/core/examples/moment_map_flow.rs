//! The moment-map norm along the gradient flow, then at the Newton solution.

use std::f64::consts::PI;

use triples::vortex::{build_problem, gradient_flow, moment_map_norm, solve, PhiProfile};

fn main() -> triples::Result<()> {
    let p = build_problem(32, 1, 0, 2.0, PhiProfile::Cosine { level: PI, amplitude: 1.0 })?;
    let u1 = p.grid.sample(|x, y| 0.3 * (2.0 * PI * x).sin() + 0.1 * (4.0 * PI * y).cos());
    let u2 = p.grid.sample(|x, _| -0.2 * (2.0 * PI * x).cos());
    let trace = gradient_flow(&p, &u1, &u2, 1e-3, 200)?;
    for (step, norm) in trace.norms.iter().enumerate().step_by(25) {
        println!("step {step:>3}: |mu| = {norm:.6e}");
    }
    let s = solve(&p)?;
    println!("Newton solution: |mu| = {:.1e}", moment_map_norm(&p, &s.u1, &s.u2)?);
    Ok(())
}
