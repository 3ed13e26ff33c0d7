use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::grid::{sup_norm, Spectral, TorusGrid};
use crate::error::{Error, Result};

/// Model for `|Φ|²` measured in the background metrics.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum PhiProfile {
    Constant { level: f64 },
    /// `level + amplitude·cos(2πx)·cos(2πy)`.
    Cosine { level: f64, amplitude: f64 },
    /// `Φ = 0`.
    Zero,
}

impl PhiProfile {
    pub fn validate(&self) -> Result<()> {
        match *self {
            PhiProfile::Constant { level } if !(level > 0.0 && level.is_finite()) => Err(
                Error::InvalidProfile(format!("constant level {level} must be positive")),
            ),
            PhiProfile::Cosine { level, amplitude } => {
                if !(level > 0.0 && level.is_finite() && amplitude.is_finite()) {
                    Err(Error::InvalidProfile(format!("cosine level {level} must be positive")))
                } else if amplitude.abs() >= level {
                    Err(Error::InvalidProfile(format!(
                        "cosine amplitude {amplitude} must be smaller than the level {level}"
                    )))
                } else {
                    Ok(())
                }
            }
            _ => Ok(()),
        }
    }

    pub fn sample(&self, grid: &TorusGrid) -> Vec<f64> {
        match *self {
            PhiProfile::Constant { level } => vec![level; grid.len()],
            PhiProfile::Cosine { level, amplitude } => grid.sample(|x, y| {
                level + amplitude * (2.0 * PI * x).cos() * (2.0 * PI * y).cos()
            }),
            PhiProfile::Zero => vec![0.0; grid.len()],
        }
    }
}

impl fmt::Display for PhiProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PhiProfile::Constant { level } => write!(f, "constant:{level}"),
            PhiProfile::Cosine { level, amplitude } => write!(f, "cosine:{level}:{amplitude}"),
            PhiProfile::Zero => write!(f, "zero"),
        }
    }
}

impl FromStr for PhiProfile {
    type Err = Error;
    /// `constant:LEVEL`, `cosine:LEVEL:AMPLITUDE` or `zero`.
    fn from_str(s: &str) -> Result<Self> {
        let err = |reason: &str| Error::Parse {
            what: "profile",
            input: s.to_string(),
            reason: reason.to_string(),
        };
        let num = |t: &str| t.trim().parse::<f64>().map_err(|_| err("bad number"));
        let parts: Vec<&str> = s.trim().split(':').collect();
        let profile = match parts.as_slice() {
            ["zero"] => PhiProfile::Zero,
            ["constant", level] => PhiProfile::Constant { level: num(level)? },
            ["cosine", level, amplitude] => PhiProfile::Cosine {
                level: num(level)?,
                amplitude: num(amplitude)?,
            },
            _ => return Err(err("expected constant:L, cosine:L:A or zero")),
        };
        profile.validate()?;
        Ok(profile)
    }
}

/// The coupled vortex equations for line bundles `E1`, `E2` of degrees
/// `d1`, `d2` on the flat unit torus, with metrics `h_i = e^{2u_i}·h_i⁰`:
///
/// ```text
/// c1 − Δu1 + |Φ|²·e^{2(u1−u2)} = 2πτ
/// c2 − Δu2 − |Φ|²·e^{2(u1−u2)} = 2πτ'
/// ```
///
/// where `c_i = 2π·d_i` are the constant curvatures of the background
/// metrics.
#[derive(Clone, Debug, PartialEq)]
pub struct VortexProblem {
    pub grid: TorusGrid,
    pub d1: i64,
    pub d2: i64,
    pub tau: f64,
    pub tau_prime: f64,
    pub phi_sq: Vec<f64>,
}

/// Tolerance on `τ + τ' = d1 + d2`.
pub const TRACE_TOLERANCE: f64 = 1e-12;

impl VortexProblem {
    /// Builds a problem from an explicit nonnegative `|Φ|²` sample.
    pub fn with_phi_sq(grid: TorusGrid, d1: i64, d2: i64, sigma: f64, phi_sq: Vec<f64>) -> Result<Self> {
        grid.check(&phi_sq)?;
        if let Some(bad) = phi_sq.iter().find(|x| !(**x >= 0.0 && x.is_finite())) {
            return Err(Error::InvalidProfile(format!(
                "|Φ|² must be finite and nonnegative, found {bad}"
            )));
        }
        if !sigma.is_finite() {
            return Err(Error::InvalidInput(format!("sigma = {sigma} is not finite")));
        }
        let total = (d1 + d2) as f64;
        Ok(VortexProblem {
            grid,
            d1,
            d2,
            tau: (total + sigma) / 2.0,
            tau_prime: (total - sigma) / 2.0,
            phi_sq,
        })
    }

    pub fn sigma(&self) -> f64 {
        self.tau - self.tau_prime
    }

    pub fn c1(&self) -> f64 {
        2.0 * PI * self.d1 as f64
    }

    pub fn c2(&self) -> f64 {
        2.0 * PI * self.d2 as f64
    }

    pub fn trace_defect(&self) -> f64 {
        ((self.tau + self.tau_prime) - (self.d1 + self.d2) as f64).abs()
    }

    pub fn trace_consistent(&self) -> bool {
        self.trace_defect() < TRACE_TOLERANCE
    }

    pub fn phi_is_zero(&self) -> bool {
        sup_norm(&self.phi_sq) == 0.0
    }
}

/// Sets `τ`, `τ'` from `τ + τ' = d1 + d2`, `τ − τ' = σ` and samples the
/// profile.
pub fn build_problem(n: usize, d1: i64, d2: i64, sigma: f64, profile: PhiProfile) -> Result<VortexProblem> {
    profile.validate()?;
    let grid = TorusGrid::new(n)?;
    let phi_sq = profile.sample(&grid);
    VortexProblem::with_phi_sq(grid, d1, d2, sigma, phi_sq)
}

/// The scalar equation for `v = u1 − u2` left after the trace part is
/// solved by `u1 + u2 ≡ 0`:
///
/// ```text
/// Δv = 2π(d1 − d2) − 2πσ + 2·|Φ|²·e^{2v}
/// ```
///
/// Written as `G(v) = Δv − offset − 2·|Φ|²·e^{2v} = 0` with
/// `offset = 2π(d1 − d2 − σ)`. `G` is minus the gradient of the convex
/// energy `∫ ½|∇v|² + offset·v + |Φ|²·e^{2v}`.
pub struct ReducedEquation {
    spectral: Spectral,
    phi_sq: Vec<f64>,
    pub offset: f64,
    pub trace_defect: f64,
}

impl ReducedEquation {
    pub fn grid(&self) -> TorusGrid {
        self.spectral.grid()
    }

    pub fn spectral(&self) -> &Spectral {
        &self.spectral
    }

    pub fn phi_sq(&self) -> &[f64] {
        &self.phi_sq
    }

    /// `2π(d1 − d2) − 2πσ + 2·|Φ|²·e^{2v}`, the right-hand side of `Δv = …`.
    pub fn difference_rhs(&self, v: &[f64]) -> Vec<f64> {
        self.coupling(v).iter().map(|c| self.offset + c).collect()
    }

    /// `2·|Φ|²·e^{2v}`.
    pub fn coupling(&self, v: &[f64]) -> Vec<f64> {
        self.phi_sq
            .iter()
            .zip(v)
            .map(|(f, v)| 2.0 * f * (2.0 * v).exp())
            .collect()
    }

    pub fn residual(&self, v: &[f64]) -> Vec<f64> {
        let lap = self.spectral.laplacian(v);
        lap.iter()
            .zip(self.difference_rhs(v))
            .map(|(l, r)| l - r)
            .collect()
    }

    /// `(Δ − 4·|Φ|²·e^{2v})·w`.
    pub fn jacobian_apply(&self, v: &[f64], w: &[f64]) -> Vec<f64> {
        let lap = self.spectral.laplacian(w);
        lap.iter()
            .zip(self.potential(v))
            .zip(w)
            .map(|((l, q), w)| l - q * w)
            .collect()
    }

    /// `4·|Φ|²·e^{2v}`, the zeroth-order part of `−J`.
    pub fn potential(&self, v: &[f64]) -> Vec<f64> {
        self.coupling(v).iter().map(|c| 2.0 * c).collect()
    }

    pub fn energy(&self, v: &[f64]) -> f64 {
        let g = self.grid();
        let pointwise: Vec<f64> = self
            .phi_sq
            .iter()
            .zip(v)
            .map(|(f, v)| self.offset * v + f * (2.0 * v).exp())
            .collect();
        0.5 * self.spectral.dirichlet_energy(v) + g.integrate(&pointwise)
    }
}

/// Checks the trace relation and splits off the scalar equation for
/// `u1 − u2`.
pub fn reduce_to_scalar(p: &VortexProblem) -> Result<ReducedEquation> {
    p.grid.check(&p.phi_sq)?;
    if !p.trace_consistent() {
        return Err(Error::ConstraintViolation(format!(
            "tau + tau' = {} but d1 + d2 = {}: the trace equation Δ(u1 + u2) = const has \
             a right-hand side with nonzero mean and no solution on the torus",
            p.tau + p.tau_prime,
            p.d1 + p.d2
        )));
    }
    Ok(ReducedEquation {
        spectral: Spectral::new(p.grid),
        phi_sq: p.phi_sq.clone(),
        offset: 2.0 * PI * ((p.d1 - p.d2) as f64 - p.sigma()),
        trace_defect: p.trace_defect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn build_examples() {
        let p = build_problem(64, 0, 0, 1.0, PhiProfile::Constant { level: PI }).unwrap();
        assert_eq!((p.tau, p.tau_prime), (0.5, -0.5));
        let p = build_problem(64, 1, 0, 2.0, PhiProfile::Constant { level: PI }).unwrap();
        assert_eq!((p.tau, p.tau_prime), (1.5, -0.5));
        let p = build_problem(32, 0, 0, 1.0, PhiProfile::Zero).unwrap();
        assert!(p.phi_is_zero());
        assert_eq!(p.phi_sq.len(), 32 * 32);
    }

    #[test]
    fn bad_profiles_rejected() {
        let bad = [
            PhiProfile::Constant { level: 0.0 },
            PhiProfile::Constant { level: -1.0 },
            PhiProfile::Cosine { level: 1.0, amplitude: 1.0 },
            PhiProfile::Cosine { level: 1.0, amplitude: -2.0 },
            PhiProfile::Constant { level: f64::NAN },
        ];
        for profile in bad {
            assert!(matches!(build_problem(16, 0, 0, 1.0, profile), Err(Error::InvalidProfile(_))));
        }
        let g = TorusGrid::new(16).unwrap();
        let mut f = vec![1.0; g.len()];
        f[3] = -1e-3;
        assert!(VortexProblem::with_phi_sq(g, 0, 0, 1.0, f).is_err());
        assert!(build_problem(15, 0, 0, 1.0, PhiProfile::Zero).is_err());
    }

    #[test]
    fn profile_parsing() {
        assert_eq!("zero".parse::<PhiProfile>().unwrap(), PhiProfile::Zero);
        assert_eq!(
            "constant:2.5".parse::<PhiProfile>().unwrap(),
            PhiProfile::Constant { level: 2.5 }
        );
        assert_eq!(
            "cosine:2:1".parse::<PhiProfile>().unwrap(),
            PhiProfile::Cosine { level: 2.0, amplitude: 1.0 }
        );
        assert!("cosine:1:1".parse::<PhiProfile>().is_err());
        assert!("gaussian:1".parse::<PhiProfile>().is_err());
    }

    #[test]
    fn trace_consistency() {
        let mut p = build_problem(16, 2, -1, 0.7, PhiProfile::Constant { level: 1.0 }).unwrap();
        assert!(reduce_to_scalar(&p).is_ok());
        p.tau_prime += 0.1;
        assert!(matches!(reduce_to_scalar(&p), Err(Error::ConstraintViolation(_))));
    }

    #[test]
    fn reduced_integral_budget() {
        // At the constant solution the integrated equation reads
        // ∫ 2|Φ|² e^{2v} = 2π(σ − (d1 − d2)).
        let level = 1.3;
        let sigma = 2.5;
        let p = build_problem(16, 1, 0, sigma, PhiProfile::Constant { level }).unwrap();
        let eq = reduce_to_scalar(&p).unwrap();
        let v0 = 0.5 * (PI * (sigma - 1.0) / level).ln();
        let v = vec![v0; p.grid.len()];
        let budget = p.grid.integrate(&eq.coupling(&v));
        assert!((budget - 2.0 * PI * (sigma - 1.0)).abs() < 1e-12);
        assert!(sup_norm(&eq.residual(&v)) < 1e-12);
    }
}
