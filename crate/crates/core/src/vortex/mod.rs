//! Coupled vortex equations for a triple of line bundles on the flat unit
//! torus.
//!
//! With `u1 + u2` gauged to zero the system collapses to one semilinear
//! equation for `v = u1 − u2`,
//!
//! ```text
//! Δv = 2π(d1 − d2) − 2πσ + 2|Φ|²e^{2v},
//! ```
//!
//! which is solved by damped Newton steps with spectral derivatives. For
//! `|Φ|² ≢ 0` a solution exists exactly when `σ > d1 − d2`.

pub mod diagnostics;
pub mod export;
pub mod grid;
pub mod problem;
pub mod solver;

pub use diagnostics::{gradient_flow, integral_identity_check, moment_map_norm, residual, FlowTrace, Residual};
pub use export::{write_fields, VortexSummary};
pub use grid::{sup_norm, Spectral, TorusGrid};
pub use problem::{build_problem, reduce_to_scalar, PhiProfile, ReducedEquation, VortexProblem};
pub use solver::{
    solve, solve_diagonal, solve_with, sweep_sigma, DiagonalSolution, DivergenceCertificate, SolveOptions,
    SolveStatus, SweepRow, SweepTable, SweepTemplate, VortexSolution,
};
