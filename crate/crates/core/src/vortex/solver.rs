use rayon::prelude::*;
use serde::Serialize;

use super::diagnostics::residual_with;
use super::grid::sup_norm;
use super::problem::{build_problem, reduce_to_scalar, PhiProfile, ReducedEquation, VortexProblem};
use crate::error::{Error, Result};

pub const DEFAULT_TOLERANCE: f64 = 1e-10;
pub const DEFAULT_MAX_ITER: usize = 200;

/// `sup |v|` beyond which the iteration is taken to be running off to
/// infinity.
pub const BLOW_UP_BOUND: f64 = 50.0;
/// Iterations without progress that count as a stall.
pub const STALL_WINDOW: usize = 20;
/// A residual is only accepted when it is also this small relative to the
/// coupling term `2|Φ|²e^{2v}`; a residual that vanishes because the
/// coupling collapses is the approach of `v → −∞`, not a solution.
pub const RELATIVE_GUARD: f64 = 1e-6;

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum DivergenceCertificate {
    /// `sup |u1 − u2|` exceeded [`BLOW_UP_BOUND`].
    NormBlowUp { v_sup: f64, iteration: usize },
    /// No decrease of the residual over [`STALL_WINDOW`] iterations.
    ResidualStall { residual_l2: f64, iteration: usize },
    /// `Φ = 0`: the linear equation `Δv = const` needs a zero right-hand
    /// side, which fails by `mean_rhs`.
    LinearObstruction { mean_rhs: f64 },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum SolveStatus {
    Feasible,
    Infeasible { certificate: DivergenceCertificate },
    /// Ran out of iterations, or stalled at a residual too small to call
    /// divergence. Never read as infeasible.
    Indeterminate { reason: String },
}

impl SolveStatus {
    pub fn label(&self) -> &'static str {
        match self {
            SolveStatus::Feasible => "feasible",
            SolveStatus::Infeasible { .. } => "infeasible",
            SolveStatus::Indeterminate { .. } => "indeterminate",
        }
    }
}

/// Metric potentials `u1`, `u2` (gauge `u1 + u2 ≡ 0`) with the full-system
/// residual at the final iterate.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VortexSolution {
    #[serde(skip)]
    pub u1: Vec<f64>,
    #[serde(skip)]
    pub u2: Vec<f64>,
    pub residual_sup: f64,
    pub residual_l2: f64,
    pub iterations: usize,
    pub feasible: bool,
    pub status: SolveStatus,
    pub tolerance: f64,
}

impl VortexSolution {
    /// `v = u1 − u2`.
    pub fn difference(&self) -> Vec<f64> {
        self.u1.iter().zip(&self.u2).map(|(a, b)| a - b).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SolveOptions {
    pub tol: f64,
    pub max_iter: usize,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions { tol: DEFAULT_TOLERANCE, max_iter: DEFAULT_MAX_ITER }
    }
}

/// Solves with the default tolerance `1e-10` and 200 Newton iterations.
pub fn solve(p: &VortexProblem) -> Result<VortexSolution> {
    solve_with(p, SolveOptions::default())
}

/// Damped Newton iteration on the scalar equation for `v = u1 − u2`.
///
/// Each step solves `(−Δ + 4|Φ|²e^{2v})·w = G(v)` by conjugate gradients
/// preconditioned with `−Δ + mean(4|Φ|²e^{2v})`, then backtracks until the
/// convex energy or the residual norm decreases. The iteration stops with
///
/// * `Feasible` once the full residual is below `tol`;
/// * `Infeasible` on a divergence certificate (`sup |v| > 50`, or a
///   residual that stops decreasing for 20 iterations);
/// * `Indeterminate` otherwise.
pub fn solve_with(p: &VortexProblem, opts: SolveOptions) -> Result<VortexSolution> {
    if opts.tol.is_nan() || opts.tol <= 0.0 {
        return Err(Error::InvalidInput(format!("tolerance {} must be positive", opts.tol)));
    }
    let eq = reduce_to_scalar(p)?;
    if p.phi_is_zero() {
        return solve_linear(p, &eq, opts);
    }
    let n = p.grid.len();
    let mut v = vec![0.0; n];
    let mut best_l2 = f64::INFINITY;
    let mut last_progress = 0;
    let mut iteration = 0;
    loop {
        let g = eq.residual(&v);
        let g_l2 = p.grid.l2(&g);
        let full = finish(p, &eq, &v, iteration, opts.tol, SolveStatus::Feasible)?;
        let coupling_sup = sup_norm(&eq.coupling(&v));
        if full.residual_sup < opts.tol && sup_norm(&g) <= RELATIVE_GUARD * coupling_sup {
            return Ok(full);
        }
        let v_sup = sup_norm(&v);
        if v_sup > BLOW_UP_BOUND {
            let certificate = DivergenceCertificate::NormBlowUp { v_sup, iteration };
            return finish(p, &eq, &v, iteration, opts.tol, SolveStatus::Infeasible { certificate });
        }
        if g_l2 < best_l2 * (1.0 - 1e-3) {
            best_l2 = g_l2;
            last_progress = iteration;
        } else if iteration - last_progress >= STALL_WINDOW {
            let status = if full.residual_sup < 1e3 * opts.tol {
                SolveStatus::Indeterminate {
                    reason: format!("stalled at residual {:.3e} near the tolerance", full.residual_sup),
                }
            } else {
                SolveStatus::Infeasible {
                    certificate: DivergenceCertificate::ResidualStall { residual_l2: g_l2, iteration },
                }
            };
            return finish(p, &eq, &v, iteration, opts.tol, status);
        }
        if iteration >= opts.max_iter {
            let reason = format!("no convergence within {} iterations", opts.max_iter);
            return finish(p, &eq, &v, iteration, opts.tol, SolveStatus::Indeterminate { reason });
        }

        let step = newton_direction(&eq, &v, &g);
        if let Some(next) = line_search(&eq, &v, &g, g_l2, &step) {
            v = next;
        }
        iteration += 1;
    }
}

fn finish(
    p: &VortexProblem,
    eq: &ReducedEquation,
    v: &[f64],
    iterations: usize,
    tol: f64,
    status: SolveStatus,
) -> Result<VortexSolution> {
    let u1: Vec<f64> = v.iter().map(|x| 0.5 * x).collect();
    let u2: Vec<f64> = v.iter().map(|x| -0.5 * x).collect();
    let r = residual_with(eq.spectral(), p, &u1, &u2)?;
    Ok(VortexSolution {
        u1,
        u2,
        residual_sup: r.sup,
        residual_l2: r.l2,
        iterations,
        feasible: status == SolveStatus::Feasible,
        status,
        tolerance: tol,
    })
}

/// `Φ = 0`: `Δv = 2π(d1 − d2 − σ)` is solvable iff the constant vanishes.
fn solve_linear(p: &VortexProblem, eq: &ReducedEquation, opts: SolveOptions) -> Result<VortexSolution> {
    let v = vec![0.0; p.grid.len()];
    if eq.offset.abs() <= 1e-12 * (1.0 + p.sigma().abs()) {
        return finish(p, eq, &v, 0, opts.tol, SolveStatus::Feasible);
    }
    let certificate = DivergenceCertificate::LinearObstruction { mean_rhs: eq.offset };
    finish(p, eq, &v, 0, opts.tol, SolveStatus::Infeasible { certificate })
}

/// Solves `(−Δ + q)·w = g` with `q = 4|Φ|²e^{2v} ≥ 0` by preconditioned CG.
fn newton_direction(eq: &ReducedEquation, v: &[f64], g: &[f64]) -> Vec<f64> {
    let grid = eq.grid();
    let sp = eq.spectral();
    let q = eq.potential(v);
    let shift = grid.integrate(&q);
    let apply = |x: &[f64]| -> Vec<f64> {
        let lap = sp.laplacian(x);
        lap.iter().zip(&q).zip(x).map(|((l, q), x)| -l + q * x).collect()
    };
    let precondition = |r: &[f64]| sp.solve_shifted(r, shift);

    let n = g.len();
    let mut x = vec![0.0; n];
    let mut r = g.to_vec();
    let mut z = precondition(&r);
    let mut d = z.clone();
    let mut rz = grid.inner(&r, &z);
    let target = 1e-14 * grid.l2(g);
    for _ in 0..500 {
        if grid.l2(&r) <= target || rz == 0.0 {
            break;
        }
        let ad = apply(&d);
        let curvature = grid.inner(&d, &ad);
        if curvature.is_nan() || curvature <= 0.0 {
            break;
        }
        let alpha = rz / curvature;
        for i in 0..n {
            x[i] += alpha * d[i];
            r[i] -= alpha * ad[i];
        }
        z = precondition(&r);
        let rz_next = grid.inner(&r, &z);
        let beta = rz_next / rz;
        rz = rz_next;
        for i in 0..n {
            d[i] = z[i] + beta * d[i];
        }
    }
    x
}

fn line_search(eq: &ReducedEquation, v: &[f64], g: &[f64], g_l2: f64, step: &[f64]) -> Option<Vec<f64>> {
    let grid = eq.grid();
    let energy = eq.energy(v);
    // directional derivative of the energy along the step; its gradient is −G
    let slope = -grid.inner(g, step);
    let mut alpha = 1.0;
    for _ in 0..40 {
        let trial: Vec<f64> = v.iter().zip(step).map(|(v, w)| v + alpha * w).collect();
        let energy_ok = eq.energy(&trial) <= energy + 1e-4 * alpha * slope;
        let residual_ok = grid.l2(&eq.residual(&trial)) < (1.0 - 1e-4 * alpha) * g_l2;
        if energy_ok || residual_ok {
            return Some(trial);
        }
        alpha *= 0.5;
    }
    None
}

/// Problems sharing everything except σ.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SweepTemplate {
    pub n: usize,
    pub d1: i64,
    pub d2: i64,
    pub profile: PhiProfile,
    pub options: SolveOptions,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepRow {
    pub sigma: f64,
    pub status: &'static str,
    pub feasible: bool,
    pub residual_sup: f64,
    pub iterations: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepTable {
    pub rows: Vec<SweepRow>,
    /// Feasibility reads `false…false, true…true` with no indeterminate row.
    pub monotone: bool,
    /// Every feasible row has `σ > d1 − d2` and every infeasible one
    /// `σ ≤ d1 − d2`.
    pub threshold_consistent: bool,
    pub warnings: Vec<String>,
}

/// One solve per σ (in parallel), rows in input order.
pub fn sweep_sigma(template: &SweepTemplate, sigmas: &[f64]) -> Result<SweepTable> {
    if sigmas.windows(2).any(|w| w[0].is_nan() || w[0] > w[1]) {
        return Err(Error::InvalidInput("sigmas must be sorted ascending".into()));
    }
    let rows: Vec<SweepRow> = sigmas
        .par_iter()
        .map(|&sigma| {
            let p = build_problem(template.n, template.d1, template.d2, sigma, template.profile)?;
            let s = solve_with(&p, template.options)?;
            Ok(SweepRow {
                sigma,
                status: s.status.label(),
                feasible: s.feasible,
                residual_sup: s.residual_sup,
                iterations: s.iterations,
            })
        })
        .collect::<Result<_>>()?;

    let mut warnings = Vec::new();
    let mut monotone = true;
    let mut seen_feasible = false;
    for row in &rows {
        match row.status {
            "indeterminate" => {
                monotone = false;
                warnings.push(format!("sigma = {}: indeterminate solve", row.sigma));
            }
            "infeasible" if seen_feasible => {
                monotone = false;
                warnings.push(format!("sigma = {}: infeasible after a feasible row", row.sigma));
            }
            _ => {}
        }
        seen_feasible |= row.feasible;
    }
    let threshold = (template.d1 - template.d2) as f64;
    let threshold_consistent = rows.iter().all(|r| match r.status {
        "feasible" => r.sigma > threshold,
        "infeasible" => r.sigma <= threshold,
        _ => true,
    });
    if !threshold_consistent {
        warnings.push(format!("feasibility does not switch at sigma = d1 - d2 = {threshold}"));
    }
    Ok(SweepTable { rows, monotone, threshold_consistent, warnings })
}

#[derive(Debug)]
pub struct DiagonalSolution {
    pub components: Vec<Result<VortexSolution>>,
    pub feasible: bool,
    /// Index of the first component that errored or is not feasible.
    pub first_failure: Option<usize>,
}

/// Solves each summand of a direct sum independently.
pub fn solve_diagonal(problems: &[VortexProblem]) -> DiagonalSolution {
    let components: Vec<Result<VortexSolution>> = problems.par_iter().map(solve).collect();
    let first_failure = components
        .iter()
        .position(|c| !matches!(c, Ok(s) if s.feasible));
    DiagonalSolution {
        feasible: first_failure.is_none(),
        first_failure,
        components,
    }
}
