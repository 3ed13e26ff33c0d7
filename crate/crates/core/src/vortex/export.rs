use std::io::Write;

use serde::Serialize;

use super::diagnostics::residual;
use super::problem::VortexProblem;
use super::solver::{SolveStatus, VortexSolution};
use crate::error::{Error, Result};

pub const FIELD_HEADER: [&str; 6] = ["x", "y", "u1", "u2", "res1", "res2"];

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VortexSummary {
    pub sigma: f64,
    pub tau: f64,
    pub tau_prime: f64,
    pub d1: i64,
    pub d2: i64,
    pub feasible: bool,
    pub residual_sup: f64,
    pub iterations: usize,
    pub status: SolveStatus,
}

impl VortexSummary {
    pub fn new(p: &VortexProblem, s: &VortexSolution) -> Self {
        VortexSummary {
            sigma: p.sigma(),
            tau: p.tau,
            tau_prime: p.tau_prime,
            d1: p.d1,
            d2: p.d2,
            feasible: s.feasible,
            residual_sup: s.residual_sup,
            iterations: s.iterations,
            status: s.status.clone(),
        }
    }
}

/// Writes one row per grid point, row-major, with header
/// `x,y,u1,u2,res1,res2`.
pub fn write_fields<W: Write>(out: W, p: &VortexProblem, s: &VortexSolution) -> Result<()> {
    let r = residual(p, &s.u1, &s.u2)?;
    let mut w = csv::Writer::from_writer(out);
    let csv_err = |e: csv::Error| Error::Io(e.to_string());
    w.write_record(FIELD_HEADER).map_err(csv_err)?;
    for i in 0..p.grid.len() {
        let (x, y) = p.grid.point(i);
        w.serialize((x, y, s.u1[i], s.u2[i], r.res1[i], r.res2[i])).map_err(csv_err)?;
    }
    w.flush()?;
    Ok(())
}
