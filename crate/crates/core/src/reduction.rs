//! Slope bookkeeping for the SU(2)-equivariant extension
//! `0 → p*E1 → F → p*E2 ⊗ q*O(2) → 0` over `X × P¹`.
//!
//! With the polarization `ω_σ = (σ/2)·p*ω_X ⊕ q*ω_P¹` (both factors of
//! volume one), `F` has rank `r1 + r2` and σ-slope
//! `(d1 + d2 + σ·r2)/(r1 + r2)`, which is exactly the σ-slope of the
//! triple. Invariant subsheaves of `F` come from subtriples and obey the
//! same formula, so slope stability of `F` and σ-stability of `T` can be
//! compared subtriple by subtriple.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::invariants::{dual_invariants, RankDegree, SubtripleInvariants, TripleInvariants};
use crate::rational::Rational;
use crate::stability::{mu_sigma, sigma_from_tau, tau_from_sigma, tau_prime, theta_tau};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ExtensionInvariants {
    pub base: TripleInvariants,
    pub sigma: Rational,
    pub rank: i64,
    pub slope: Rational,
}

/// Outcome of the three equivalent tests for a single subtriple.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SlopeEquivalence {
    /// `μ_σ(F') < μ_σ(F)`.
    pub f_slope_test: bool,
    /// `θ_τ(T') < 0` with `τ = μ_σ(T)`.
    pub theta_test: bool,
    /// `μ_σ(T') < μ_σ(T)`.
    pub sigma_slope_test: bool,
}

impl SlopeEquivalence {
    pub fn agree(&self) -> bool {
        self.f_slope_test == self.theta_test && self.theta_test == self.sigma_slope_test
    }
}

fn check_sigma(sigma: Rational) -> Result<()> {
    if sigma <= Rational::ZERO {
        return Err(Error::OutOfRange(format!(
            "sigma = {sigma}: the polarization parameter must be positive"
        )));
    }
    Ok(())
}

pub fn extension_invariants(t: &TripleInvariants, sigma: Rational) -> Result<ExtensionInvariants> {
    check_sigma(sigma)?;
    let rank = t.total_rank();
    let slope = (Rational::from(t.total_degree()) + sigma * t.r2()) / Rational::from(rank);
    Ok(ExtensionInvariants { base: *t, sigma, rank, slope })
}

/// σ-slope of the invariant subsheaf `F' ⊂ F` attached to `T'`.
pub fn subextension_slope(tp: &SubtripleInvariants, sigma: Rational) -> Result<Rational> {
    let n = tp.total_rank();
    if n < 1 {
        return Err(Error::InvalidRank(n));
    }
    Ok((Rational::from(tp.total_degree()) + sigma * tp.r2()) / Rational::from(n))
}

pub fn check_slope_equivalence(
    t: &TripleInvariants,
    tp: &SubtripleInvariants,
    sigma: Rational,
) -> Result<SlopeEquivalence> {
    check_sigma(sigma)?;
    if tp.is_full(t) {
        return Err(Error::ImproperCandidate(tp.to_string()));
    }
    let f = extension_invariants(t, sigma)?;
    let tau = tau_from_sigma(t, sigma);
    Ok(SlopeEquivalence {
        f_slope_test: subextension_slope(tp, sigma)? < f.slope,
        theta_test: theta_tau(t, tp, tau)? < Rational::ZERO,
        sigma_slope_test: mu_sigma(tp, sigma)? < mu_sigma(t, sigma)?,
    })
}

/// The parameter `−τ'` at which the dual triple is compared.
pub fn dual_parameter(t: &TripleInvariants, tau: Rational) -> Rational {
    -tau_prime(t, tau)
}

/// σ of `(T, τ)` and of `(T*, −τ')`; the two always coincide.
pub fn dual_sigma_pair(t: &TripleInvariants, tau: Rational) -> (Rational, Rational) {
    let primal = sigma_from_tau(t, tau);
    let dual = sigma_from_tau(&dual_invariants(t), dual_parameter(t, tau));
    (primal, dual)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chambers::parameter_interval;
    use crate::rational::q;

    fn t(r1: i64, r2: i64, d1: i64, d2: i64) -> TripleInvariants {
        TripleInvariants::new(r1, r2, d1, d2).unwrap()
    }

    fn s(r1: i64, r2: i64, d1: i64, d2: i64) -> SubtripleInvariants {
        SubtripleInvariants::new(r1, r2, d1, d2).unwrap()
    }

    #[test]
    fn extension_examples() {
        let e = extension_invariants(&t(1, 1, 1, 0), q(3, 1)).unwrap();
        assert_eq!((e.rank, e.slope), (2, q(2, 1)));
        let e = extension_invariants(&t(1, 1, 1, 1), Rational::ONE).unwrap();
        assert_eq!(e.slope, q(3, 2));
        assert!(extension_invariants(&t(1, 1, 1, 1), Rational::ZERO).is_err());
        assert!(extension_invariants(&t(1, 1, 1, 1), q(-1, 2)).is_err());
    }

    #[test]
    fn subextension_examples() {
        assert_eq!(subextension_slope(&s(1, 0, 1, 0), q(9, 7)).unwrap(), Rational::ONE);
        assert_eq!(subextension_slope(&s(0, 1, 0, -1), q(3, 1)).unwrap(), q(2, 1));
        assert_eq!(subextension_slope(&s(1, 1, 0, 1), q(2, 1)).unwrap(), q(3, 2));
    }

    #[test]
    fn equivalence_examples() {
        let x = t(1, 1, 1, 0);
        let e = check_slope_equivalence(&x, &s(1, 0, 1, 0), q(3, 1)).unwrap();
        assert_eq!((e.f_slope_test, e.theta_test, e.sigma_slope_test), (true, true, true));
        let e = check_slope_equivalence(&x, &s(1, 0, 1, 0), Rational::ONE).unwrap();
        assert_eq!((e.f_slope_test, e.theta_test, e.sigma_slope_test), (false, false, false));
        assert!(check_slope_equivalence(&x, &x.as_subtriple(), Rational::ONE).is_err());
    }

    #[test]
    fn dual_parameter_examples() {
        let x = t(1, 1, 1, 0);
        assert_eq!(dual_parameter(&x, q(2, 1)), Rational::ONE);
        assert_eq!(dual_sigma_pair(&x, q(2, 1)), (q(3, 1), q(3, 1)));

        let y = t(2, 1, 2, 0);
        let dp = dual_parameter(&y, q(4, 3));
        assert_eq!(dp, q(2, 3));
        assert!(parameter_interval(&dual_invariants(&y)).contains(dp));

        let z = t(3, 2, 5, -1);
        assert_eq!(dual_parameter(&z, z.mu()), dual_invariants(&z).mu());
        assert_eq!(dual_parameter(&z, z.mu()), -z.mu());
    }
}
