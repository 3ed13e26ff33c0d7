//! Constant |Φ|² has the constant solution v = ½ ln(πσ / level).

use std::f64::consts::PI;

use triples::vortex::{build_problem, integral_identity_check, solve, PhiProfile};

fn main() -> triples::Result<()> {
    let level = PI;
    for sigma in [0.5, 1.0, 2.0, 4.0] {
        let p = build_problem(64, 0, 0, sigma, PhiProfile::Constant { level })?;
        let s = solve(&p)?;
        let v = s.difference();
        let exact = 0.5 * (PI * sigma / level).ln();
        let err = v.iter().map(|x| (x - exact).abs()).fold(0.0, f64::max);
        println!(
            "sigma = {sigma}: v = {:.12} (exact {exact:.12}, error {err:.1e}), residual {:.1e}, \
             integral defect {:.1e}, {} Newton steps",
            v[0],
            s.residual_sup,
            integral_identity_check(&p, &s)?,
            s.iterations
        );
    }
    Ok(())
}
