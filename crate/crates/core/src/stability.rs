//! The stability functional `θ_τ`, σ-slopes and the parameter changes
//! between `τ`, `τ'` and `σ`.
//!
//! For a triple `T` and a subtriple `T'`,
//!
//! ```text
//! θ_τ(T') = (μ(T') − τ) − (r2'/r2)·((r1+r2)/(r1'+r2'))·(μ(T) − τ)
//! μ_σ(T') = (d1' + d2' + r2'·σ) / (r1' + r2')
//! ```
//!
//! `T` is τ-stable when `θ_τ(T') < 0` for every proper nontrivial subtriple.
//! With `τ = μ_σ(T)` one has `θ_τ(T') = μ_σ(T') − μ_σ(T)` identically.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::invariants::{RankDegree, SubtripleInvariants, TripleInvariants};
use crate::rational::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum StabilityStatus {
    Stable,
    StrictlySemistable,
    Unstable,
}

/// Outcome of a stability check.
///
/// `witness` is an argmax of `θ_τ` among the inspected subtriples, with
/// `theta` its value. For unstable and strictly semistable verdicts the
/// witness has `θ_τ > 0` and `θ_τ = 0` respectively. The only verdict without
/// a witness is the Φ = 0 case where a bundle is flagged unstable, since the
/// destabilizing subbundle is not visible from invariants.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StabilityVerdict {
    pub status: StabilityStatus,
    pub witness: Option<SubtripleInvariants>,
    pub theta: Option<Rational>,
}

impl StabilityVerdict {
    fn from_max(max: Option<(SubtripleInvariants, Rational)>) -> Self {
        let status = match max.map(|(_, th)| th.signum()) {
            None | Some(std::cmp::Ordering::Less) => StabilityStatus::Stable,
            Some(std::cmp::Ordering::Equal) => StabilityStatus::StrictlySemistable,
            Some(std::cmp::Ordering::Greater) => StabilityStatus::Unstable,
        };
        StabilityVerdict {
            status,
            witness: max.map(|(w, _)| w),
            theta: max.map(|(_, th)| th),
        }
    }

    pub fn is_stable(&self) -> bool {
        self.status == StabilityStatus::Stable
    }
}

/// Bounds implied by τ-stability on four families of subobjects:
/// `μ(E1') < τ`, `μ(E2') < τ'` for `E2' ⊆ ker Φ`, `μ(E2'') > τ'` for
/// quotients of `E2`, and `μ(E1'') > τ` for quotients of `E1` killing
/// `Φ(E2)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SlopeThresholds {
    pub sub_e1_bound: Rational,
    pub sub_kernel_bound: Rational,
    pub quot_e2_bound: Rational,
    pub quot_e1_bound: Rational,
}

pub fn theta_tau(t: &TripleInvariants, tp: &SubtripleInvariants, tau: Rational) -> Result<Rational> {
    tp.check_within(t)?;
    let coeff = Rational::from(tp.r2()) / Rational::from(t.r2()) * Rational::from(t.total_rank())
        / Rational::from(tp.total_rank());
    Ok((tp.mu() - tau) - coeff * (t.mu() - tau))
}

/// `μ_σ` of a triple or subtriple.
pub fn mu_sigma<T: RankDegree>(x: &T, sigma: Rational) -> Result<Rational> {
    let n = x.total_rank();
    if n < 1 {
        return Err(Error::InvalidRank(n));
    }
    Ok((Rational::from(x.total_degree()) + sigma * x.r2()) / Rational::from(n))
}

/// `σ(τ) = ((r1+r2)τ − (d1+d2)) / r2`.
pub fn sigma_from_tau(t: &TripleInvariants, tau: Rational) -> Rational {
    (tau * t.total_rank() - Rational::from(t.total_degree())) / Rational::from(t.r2())
}

/// `τ = μ_σ(T)`, the inverse of [`sigma_from_tau`].
pub fn tau_from_sigma(t: &TripleInvariants, sigma: Rational) -> Rational {
    mu_sigma(t, sigma).expect("triple ranks are positive")
}

/// `τ'` determined by `r1·τ + r2·τ' = d1 + d2`.
pub fn tau_prime(t: &TripleInvariants, tau: Rational) -> Rational {
    (Rational::from(t.total_degree()) - tau * t.r1()) / Rational::from(t.r2())
}

pub fn slope_thresholds(t: &TripleInvariants, tau: Rational) -> SlopeThresholds {
    let tp = tau_prime(t, tau);
    SlopeThresholds {
        sub_e1_bound: tau,
        sub_kernel_bound: tp,
        quot_e2_bound: tp,
        quot_e1_bound: tau,
    }
}

/// The same bounds written through σ: `μ(T) + r2σ/(r1+r2)` and
/// `μ(T) − r1σ/(r1+r2)`.
pub fn slope_thresholds_sigma(t: &TripleInvariants, sigma: Rational) -> SlopeThresholds {
    let n = Rational::from(t.total_rank());
    let upper = t.mu() + sigma * t.r2() / n;
    let lower = t.mu() - sigma * t.r1() / n;
    SlopeThresholds {
        sub_e1_bound: upper,
        sub_kernel_bound: lower,
        quot_e2_bound: lower,
        quot_e1_bound: upper,
    }
}

/// Stability of `t` relative to a finite list of proper candidate
/// subtriples. An empty list gives a vacuous `Stable`.
pub fn evaluate_stability(
    t: &TripleInvariants,
    tau: Rational,
    candidates: &[SubtripleInvariants],
) -> Result<StabilityVerdict> {
    let mut best: Option<(SubtripleInvariants, Rational)> = None;
    for c in candidates {
        if c.is_full(t) {
            return Err(Error::ImproperCandidate(c.to_string()));
        }
        let th = theta_tau(t, c, tau)?;
        if best.is_none_or(|(_, b)| th > b) {
            best = Some((*c, th));
        }
    }
    Ok(StabilityVerdict::from_max(best))
}

/// Complete classification of the degenerate triple `(E1, E2, 0)`: never
/// stable, strictly semistable exactly when `τ = μ(E1)` and both bundles are
/// semistable.
pub fn classify_phi_zero(
    t: &TripleInvariants,
    tau: Rational,
    e1_semistable: bool,
    e2_semistable: bool,
) -> StabilityVerdict {
    let e1_alone = SubtripleInvariants::new(t.r1(), 0, t.d1(), 0).expect("r1 >= 1");
    let e2_alone = SubtripleInvariants::new(0, t.r2(), 0, t.d2()).expect("r2 >= 1");
    let theta = |w: &SubtripleInvariants| theta_tau(t, w, tau).expect("valid subtriple");
    let mu1 = t.mu1();
    if tau == mu1 {
        let w = e1_alone;
        let status = if e1_semistable && e2_semistable {
            StabilityStatus::StrictlySemistable
        } else {
            StabilityStatus::Unstable
        };
        let (witness, th) = match status {
            StabilityStatus::StrictlySemistable => (Some(w), Some(theta(&w))),
            _ => (None, None),
        };
        return StabilityVerdict { status, witness, theta: th };
    }
    // Off μ(E1) one of the summands E1 or E2 (the latter sits in ker Φ)
    // has θ > 0.
    let w = if tau < mu1 { e1_alone } else { e2_alone };
    StabilityVerdict {
        status: StabilityStatus::Unstable,
        witness: Some(w),
        theta: Some(theta(&w)),
    }
}

/// Complete classification for `r1 = r2 = 1`. With `Φ ≠ 0` the only proper
/// saturated subtriple is `(E1, 0)`, so the triple is stable iff `τ > d1`.
pub fn classify_line_pair(t: &TripleInvariants, tau: Rational, phi_nonzero: bool) -> Result<StabilityVerdict> {
    if t.r1() != 1 || t.r2() != 1 {
        return Err(Error::InvalidInput(format!(
            "line pair classification needs r1 = r2 = 1, got {t}"
        )));
    }
    if !phi_nonzero {
        return Ok(classify_phi_zero(t, tau, true, true));
    }
    let e1 = SubtripleInvariants::new(1, 0, t.d1(), 0)?;
    evaluate_stability(t, tau, &[e1])
}

/// For subtriples `K`, `I` fitting in `0 → K → T → I → 0` (ranks and degrees
/// add up componentwise), returns
/// `rank(K)·θ_τ(K) + rank(I)·θ_τ(I)`, which vanishes identically.
pub fn kernel_image_identity(
    t: &TripleInvariants,
    ker: &SubtripleInvariants,
    im: &SubtripleInvariants,
    tau: Rational,
) -> Result<Rational> {
    let sums = [
        (ker.r1() + im.r1(), t.r1(), "r1"),
        (ker.r2() + im.r2(), t.r2(), "r2"),
        (ker.d1() + im.d1(), t.d1(), "d1"),
        (ker.d2() + im.d2(), t.d2(), "d2"),
    ];
    for (got, want, name) in sums {
        if got != want {
            return Err(Error::ConstraintViolation(format!(
                "kernel {ker} and image {im} do not add up to {t}: {name} sums to {got}, expected {want}"
            )));
        }
    }
    let th_k = theta_tau(t, ker, tau)?;
    let th_i = theta_tau(t, im, tau)?;
    Ok(th_k * ker.total_rank() + th_i * im.total_rank())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn t(r1: i64, r2: i64, d1: i64, d2: i64) -> TripleInvariants {
        TripleInvariants::new(r1, r2, d1, d2).unwrap()
    }

    fn s(r1: i64, r2: i64, d1: i64, d2: i64) -> SubtripleInvariants {
        SubtripleInvariants::new(r1, r2, d1, d2).unwrap()
    }

    #[test]
    fn theta_examples() {
        assert_eq!(theta_tau(&t(2, 1, 3, 0), &s(2, 0, 3, 0), q(2, 1)).unwrap(), q(-1, 2));
        assert_eq!(theta_tau(&t(2, 1, 2, 1), &s(1, 1, 0, 1), q(3, 1)).unwrap(), q(1, 2));
        let x = t(3, 2, 5, -1);
        for tau in [q(-7, 3), Rational::ZERO, q(11, 2)] {
            assert_eq!(theta_tau(&x, &x.as_subtriple(), tau).unwrap(), Rational::ZERO);
        }
    }

    #[test]
    fn theta_rejects_oversized_subtriple() {
        assert!(theta_tau(&t(1, 1, 0, 0), &s(2, 1, 0, 0), Rational::ONE).is_err());
    }

    #[test]
    fn mu_sigma_examples() {
        assert_eq!(mu_sigma(&t(1, 1, 1, 0), q(3, 1)).unwrap(), q(2, 1));
        let x = t(3, 2, 5, -1);
        assert_eq!(mu_sigma(&x, Rational::ZERO).unwrap(), x.mu());
        assert_eq!(mu_sigma(&s(1, 0, 1, 0), q(17, 5)).unwrap(), Rational::ONE);
    }

    #[test]
    fn parameter_conversions() {
        assert_eq!(sigma_from_tau(&t(1, 1, 1, 0), q(2, 1)), q(3, 1));
        assert_eq!(sigma_from_tau(&t(2, 1, 2, 0), q(4, 3)), q(2, 1));
        let x = t(3, 2, 5, -1);
        assert_eq!(sigma_from_tau(&x, x.mu()), Rational::ZERO);

        assert_eq!(tau_from_sigma(&t(1, 1, 1, 0), q(3, 1)), q(2, 1));
        assert_eq!(tau_from_sigma(&t(2, 1, 2, 0), q(2, 1)), q(4, 3));
        assert_eq!(tau_from_sigma(&x, Rational::ZERO), x.mu());

        assert_eq!(tau_prime(&t(1, 1, 1, 0), q(2, 1)), q(-1, 1));
        assert_eq!(tau_prime(&t(2, 1, 2, 0), Rational::ONE), Rational::ZERO);
        assert_eq!(tau_prime(&x, x.mu()), x.mu());
    }

    #[test]
    fn thresholds_examples() {
        let th = slope_thresholds(&t(2, 1, 2, 0), q(4, 3));
        assert_eq!(
            (th.sub_e1_bound, th.sub_kernel_bound, th.quot_e2_bound, th.quot_e1_bound),
            (q(4, 3), q(-2, 3), q(-2, 3), q(4, 3))
        );
        let th = slope_thresholds(&t(1, 1, 1, 0), q(1, 2));
        assert!([th.sub_e1_bound, th.sub_kernel_bound, th.quot_e2_bound, th.quot_e1_bound]
            .iter()
            .all(|b| *b == q(1, 2)));
        let x = t(1, 1, 1, 0);
        let sigma = q(3, 1);
        assert_eq!(
            slope_thresholds_sigma(&x, sigma),
            slope_thresholds(&x, tau_from_sigma(&x, sigma))
        );
        assert_eq!(slope_thresholds_sigma(&x, sigma).sub_e1_bound, q(2, 1));
    }

    #[test]
    fn evaluate_stability_examples() {
        let x = t(1, 1, 1, 0);
        let c = [s(1, 0, 1, 0)];
        let v = evaluate_stability(&x, q(2, 1), &c).unwrap();
        assert_eq!(v.status, StabilityStatus::Stable);
        assert_eq!(v.theta, Some(q(-1, 1)));
        let v = evaluate_stability(&x, Rational::ONE, &c).unwrap();
        assert_eq!(v.status, StabilityStatus::StrictlySemistable);
        assert_eq!(v.theta, Some(Rational::ZERO));
        let v = evaluate_stability(&x, q(1, 2), &c).unwrap();
        assert_eq!(v.status, StabilityStatus::Unstable);
        assert_eq!(v.witness, Some(s(1, 0, 1, 0)));
    }

    #[test]
    fn evaluate_stability_rejects_full_triple() {
        let x = t(1, 1, 1, 0);
        assert!(matches!(
            evaluate_stability(&x, Rational::ONE, &[x.as_subtriple()]),
            Err(Error::ImproperCandidate(_))
        ));
    }

    #[test]
    fn phi_zero_examples() {
        let x = t(1, 1, 1, 0);
        assert_eq!(
            classify_phi_zero(&x, Rational::ONE, true, true).status,
            StabilityStatus::StrictlySemistable
        );
        assert_eq!(classify_phi_zero(&x, q(2, 1), true, true).status, StabilityStatus::Unstable);
        assert_eq!(
            classify_phi_zero(&x, Rational::ONE, false, true).status,
            StabilityStatus::Unstable
        );
        for tau in [q(-3, 1), q(1, 2), Rational::ONE, q(5, 2)] {
            let v = classify_phi_zero(&t(2, 3, 1, -4), tau, true, true);
            assert_ne!(v.status, StabilityStatus::Stable);
            if let (Some(w), Some(th)) = (v.witness, v.theta) {
                assert_eq!(theta_tau(&t(2, 3, 1, -4), &w, tau).unwrap(), th);
            }
        }
    }

    #[test]
    fn line_pair_examples() {
        let x = t(1, 1, 1, 0);
        let st = |tau| classify_line_pair(&x, tau, true).unwrap().status;
        assert_eq!(st(q(2, 1)), StabilityStatus::Stable);
        assert_eq!(st(Rational::ONE), StabilityStatus::StrictlySemistable);
        assert_eq!(st(q(1, 2)), StabilityStatus::Unstable);
        assert!(classify_line_pair(&t(2, 1, 0, 0), Rational::ONE, true).is_err());
        assert_ne!(
            classify_line_pair(&x, q(2, 1), false).unwrap().status,
            StabilityStatus::Stable
        );
    }

    #[test]
    fn kernel_image_examples() {
        let x = t(2, 2, 2, 0);
        let one = Rational::ONE;
        assert_eq!(
            kernel_image_identity(&x, &s(1, 1, 1, 0), &s(1, 1, 1, 0), one).unwrap(),
            Rational::ZERO
        );
        assert_eq!(
            kernel_image_identity(&x, &s(1, 1, 0, 0), &s(1, 1, 2, 0), one).unwrap(),
            Rational::ZERO
        );
        assert_eq!(theta_tau(&x, &s(1, 1, 0, 0), one).unwrap(), q(-1, 2));
        assert_eq!(theta_tau(&x, &s(1, 1, 2, 0), one).unwrap(), q(1, 2));
    }

    #[test]
    fn kernel_image_rejects_inconsistent_data() {
        let x = t(2, 2, 2, 0);
        assert!(matches!(
            kernel_image_identity(&x, &s(1, 1, 0, 0), &s(1, 1, 1, 0), Rational::ONE),
            Err(Error::ConstraintViolation(_))
        ));
        assert!(matches!(
            kernel_image_identity(&x, &s(1, 0, 0, 0), &s(1, 1, 2, 0), Rational::ONE),
            Err(Error::ConstraintViolation(_))
        ));
    }
}
