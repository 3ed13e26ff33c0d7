//! Admissible parameter ranges, candidate walls and the numerical
//! predicates attached to moduli of τ-stable triples.

use std::collections::BTreeSet;

use num_integer::Integer;
use rayon::prelude::*;
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::invariants::{RankDegree, TripleInvariants};
use crate::rational::Rational;
use crate::stability::sigma_from_tau;

/// Open interval `(lower, upper)`; `upper = None` stands for `+∞`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ParameterInterval {
    pub lower: Rational,
    pub upper: Option<Rational>,
}

impl ParameterInterval {
    pub fn contains(&self, x: Rational) -> bool {
        x > self.lower && self.upper.is_none_or(|u| x < u)
    }

    pub fn is_empty(&self) -> bool {
        self.upper.is_some_and(|u| u <= self.lower)
    }
}

impl Serialize for ParameterInterval {
    /// `["lower", "upper"]`, with `"inf"` for an unbounded end.
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(2))?;
        seq.serialize_element(&self.lower)?;
        match self.upper {
            Some(u) => seq.serialize_element(&u)?,
            None => seq.serialize_element("inf")?,
        }
        seq.end()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChamberDecomposition {
    pub interval: ParameterInterval,
    /// Sorted, deduplicated, each strictly inside `interval`.
    pub walls: Vec<Rational>,
    /// `gcd(r1 + r2, d1 + d2) = 1`.
    pub coprime_generic: bool,
    pub degree_window: u32,
}

impl ChamberDecomposition {
    /// The open chambers cut out of `interval` by the walls.
    pub fn chambers(&self) -> Vec<ParameterInterval> {
        if self.interval.is_empty() {
            return Vec::new();
        }
        let mut out = Vec::with_capacity(self.walls.len() + 1);
        let mut lower = self.interval.lower;
        for &w in &self.walls {
            out.push(ParameterInterval { lower, upper: Some(w) });
            lower = w;
        }
        out.push(ParameterInterval { lower, upper: self.interval.upper });
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ProjectivityFlags {
    pub quasi_projective: bool,
    pub projective: bool,
}

/// The τ-range `(μ(E1), μ_max)` outside which no τ-stable triple exists;
/// `μ_max = μ(E1) + r2/|r1 − r2|·(μ(E1) − μ(E2))`, or `+∞` when `r1 = r2`.
pub fn parameter_interval(t: &TripleInvariants) -> ParameterInterval {
    let lower = t.mu1();
    let upper = (t.r1() != t.r2()).then(|| {
        let gap = Rational::from((t.r1() - t.r2()).abs());
        lower + Rational::from(t.r2()) / gap * (t.mu1() - t.mu2())
    });
    ParameterInterval { lower, upper }
}

/// The σ-range: lower end `max(0, μ(E1) − μ(E2))`, upper end
/// `(1 + (r1+r2)/|r1−r2|)(μ(E1) − μ(E2))` or `+∞` when `r1 = r2`.
pub fn sigma_interval(t: &TripleInvariants) -> ParameterInterval {
    let diff = t.mu1() - t.mu2();
    let lower = diff.max(Rational::ZERO);
    let upper = (t.r1() != t.r2()).then(|| {
        let gap = Rational::from((t.r1() - t.r2()).abs());
        (Rational::ONE + Rational::from(t.total_rank()) / gap) * diff
    });
    ParameterInterval { lower, upper }
}

/// Candidate walls inside [`parameter_interval`], from subtriple invariants
/// with `|d1'|, |d2'| ≤ degree_window`.
pub fn enumerate_walls(t: &TripleInvariants, degree_window: u32) -> Result<ChamberDecomposition> {
    enumerate_walls_in(t, degree_window, &parameter_interval(t))
}

/// As [`enumerate_walls`], but keeps only walls strictly inside
/// `range ∩ parameter_interval(t)`.
///
/// A wall is a value of τ where `θ_τ(T') = 0` for some admissible
/// `T' = (r1', r2', d1', d2')` with `r2·r1' ≠ r1·r2'`, namely
/// `τ = (r2·(d1' + d2') − r2'·(d1 + d2)) / (r2·r1' − r1·r2')`.
/// Rank pairs with `r2·r1' = r1·r2'` make `θ_τ` independent of τ and give
/// no wall. Admissible means: `0 ≤ r_i' ≤ r_i`, ranks neither `(0,0)` nor
/// `(r1,r2)`, zero rank forces zero degree, and a full-rank component has
/// degree at most the ambient one.
pub fn enumerate_walls_in(
    t: &TripleInvariants,
    degree_window: u32,
    range: &ParameterInterval,
) -> Result<ChamberDecomposition> {
    if degree_window < 1 {
        return Err(Error::InvalidInput("degree window must be at least 1".into()));
    }
    let interval = parameter_interval(t);
    let lower = interval.lower.max(range.lower);
    let upper = match (interval.upper, range.upper) {
        (Some(a), Some(b)) => Some(a.min(b)),
        (a, b) => a.or(b),
    };
    let filter = ParameterInterval { lower, upper };

    let rank_pairs: Vec<(i64, i64)> = (0..=t.r1())
        .flat_map(|a| (0..=t.r2()).map(move |b| (a, b)))
        .filter(|&(a, b)| (a, b) != (0, 0) && (a, b) != (t.r1(), t.r2()))
        .filter(|&(a, b)| t.r2() * a != t.r1() * b)
        .collect();

    let walls: BTreeSet<Rational> = rank_pairs
        .par_iter()
        .map(|&(a, b)| walls_for_rank_pair(t, a, b, degree_window as i64, &filter))
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect();

    Ok(ChamberDecomposition {
        interval,
        walls: walls.into_iter().collect(),
        coprime_generic: t.total_rank().gcd(&t.total_degree()) == 1,
        degree_window,
    })
}

fn degree_range(rank: i64, full_rank: i64, full_degree: i64, window: i64) -> Option<(i64, i64)> {
    if rank == 0 {
        return Some((0, 0));
    }
    let hi = if rank == full_rank { window.min(full_degree) } else { window };
    (-window <= hi).then_some((-window, hi))
}

fn walls_for_rank_pair(
    t: &TripleInvariants,
    a: i64,
    b: i64,
    window: i64,
    filter: &ParameterInterval,
) -> Vec<Rational> {
    let (Some((lo1, hi1)), Some((lo2, hi2))) = (
        degree_range(a, t.r1(), t.d1(), window),
        degree_range(b, t.r2(), t.d2(), window),
    ) else {
        return Vec::new();
    };
    let r2 = Rational::from(t.r2());
    let denom = Rational::from(t.r2() * a - t.r1() * b);
    let shift = Rational::from(b * t.total_degree());
    let wall = |s: i64| (r2 * s - shift) / denom;

    // τ is affine in the degree sum s; invert the filter bounds to clip s.
    let s_at = |tau: Rational| (tau * denom + shift) / r2;
    let (mut s_lo, mut s_hi) = (lo1 + lo2, hi1 + hi2);
    let mut clip = |bound: Rational, is_lower: bool| {
        let s = s_at(bound);
        if denom.signum().is_gt() == is_lower {
            s_lo = s_lo.max(s.floor() as i64);
        } else {
            s_hi = s_hi.min(-(-s).floor() as i64);
        }
    };
    clip(filter.lower, true);
    if let Some(u) = filter.upper {
        clip(u, false);
    }
    (s_lo..=s_hi)
        .map(wall)
        .filter(|&tau| filter.contains(tau))
        .collect()
}

/// True iff τ lies on no candidate wall.
pub fn is_generic(t: &TripleInvariants, tau: Rational, degree_window: u32) -> Result<bool> {
    check_in_interval(t, tau)?;
    let walls = enumerate_walls(t, degree_window)?.walls;
    Ok(walls.binary_search(&tau).is_err())
}

fn check_in_interval(t: &TripleInvariants, tau: Rational) -> Result<()> {
    let iv = parameter_interval(t);
    if !iv.contains(tau) {
        let upper = iv.upper.map_or("inf".to_string(), |u| u.to_string());
        return Err(Error::OutOfRange(format!(
            "tau = {tau} is outside the admissible interval ({}, {upper}) of {t}",
            iv.lower
        )));
    }
    Ok(())
}

/// `1 + r2·d1 − r1·d2 + (r1² + r2² − r1·r2)(g − 1)`.
pub fn moduli_dimension(t: &TripleInvariants, genus: u32) -> i64 {
    let (r1, r2, d1, d2) = (t.r1(), t.r2(), t.d1(), t.d2());
    1 + r2 * d1 - r1 * d2 + (r1 * r1 + r2 * r2 - r1 * r2) * (genus as i64 - 1)
}

/// Quasi-projectivity always holds for rational τ; projectivity needs
/// coprime total rank and degree and a generic τ.
pub fn projectivity_flags(t: &TripleInvariants, tau: Rational, degree_window: u32) -> Result<ProjectivityFlags> {
    let generic = is_generic(t, tau, degree_window)?;
    Ok(ProjectivityFlags {
        quasi_projective: true,
        projective: generic && t.total_rank().gcd(&t.total_degree()) == 1,
    })
}

/// Distance from `mu` up to the nearest larger rational with denominator
/// at most `max_denom`.
pub fn gap_above(mu: Rational, max_denom: i64) -> Rational {
    (1..=max_denom)
        .map(|q| {
            let qr = Rational::from(q);
            let next = Rational::from_integer((mu * qr).floor() + 1) / qr;
            next - mu
        })
        .min()
        .expect("max_denom >= 1")
}

/// Distance from `mu` down to the nearest smaller rational with
/// denominator at most `max_denom`.
pub fn gap_below(mu: Rational, max_denom: i64) -> Rational {
    gap_above(-mu, max_denom)
}

/// An ε > 0 such that `(μ(E1), μ(E1) + ε)` holds no rational with
/// denominator ≤ r1 and `(μ(E2) − (r1/r2)ε, μ(E2))` holds none with
/// denominator ≤ r2. Returns half of the largest such ε.
pub fn small_tau_window(t: &TripleInvariants) -> Rational {
    let first = gap_above(t.mu1(), t.r1());
    let second = gap_below(t.mu2(), t.r2()) * t.r2() / Rational::from(t.r1());
    first.min(second) / Rational::from(2)
}

/// `r2·d1 − r1·d2 > r1·r2·(2g − 2)`.
pub fn fibration_bound(t: &TripleInvariants, genus: u32) -> bool {
    t.r2() * t.d1() - t.r1() * t.d2() > t.r1() * t.r2() * (2 * genus as i64 - 2)
}

/// σ-image of the τ-interval endpoints.
pub fn sigma_of_interval(t: &TripleInvariants, iv: &ParameterInterval) -> ParameterInterval {
    ParameterInterval {
        lower: sigma_from_tau(t, iv.lower),
        upper: iv.upper.map(|u| sigma_from_tau(t, u)),
    }
}
