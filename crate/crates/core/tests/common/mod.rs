#![allow(dead_code)]

use rand::Rng;
use triples::{Rational, SubtripleInvariants, TripleInvariants};

pub const MAX_RANK: i64 = 6;
pub const MAX_DEGREE: i64 = 20;

pub fn triple(rng: &mut impl Rng) -> TripleInvariants {
    TripleInvariants::new(
        rng.gen_range(1..=MAX_RANK),
        rng.gen_range(1..=MAX_RANK),
        rng.gen_range(-MAX_DEGREE..=MAX_DEGREE),
        rng.gen_range(-MAX_DEGREE..=MAX_DEGREE),
    )
    .unwrap()
}

fn degree(rng: &mut impl Rng, rank: i64, full: bool, ambient: i64, saturated: bool) -> Option<i64> {
    match (rank, full, saturated) {
        (0, _, _) => Some(0),
        (_, true, true) => Some(ambient),
        (_, true, false) if ambient < -MAX_DEGREE => None,
        (_, true, false) => Some(rng.gen_range(-MAX_DEGREE..=ambient.min(MAX_DEGREE))),
        _ => Some(rng.gen_range(-MAX_DEGREE..=MAX_DEGREE)),
    }
}

/// A proper subtriple of `t`; with `saturated` every full-rank component
/// carries the full degree.
pub fn subtriple(rng: &mut impl Rng, t: &TripleInvariants, saturated: bool) -> SubtripleInvariants {
    use triples::invariants::RankDegree;
    loop {
        let r1 = rng.gen_range(0..=t.r1());
        let r2 = rng.gen_range(0..=t.r2());
        if (r1, r2) == (0, 0) || (saturated && (r1, r2) == (t.r1(), t.r2())) {
            continue;
        }
        let Some(d1) = degree(rng, r1, r1 == t.r1(), t.d1(), saturated) else { continue };
        let Some(d2) = degree(rng, r2, r2 == t.r2(), t.d2(), saturated) else { continue };
        let s = SubtripleInvariants::new(r1, r2, d1, d2).unwrap();
        if !s.is_full(t) {
            s.check_within(t).unwrap();
            return s;
        }
    }
}

/// `p/q` with `1 ≤ q ≤ 12`.
pub fn rational(rng: &mut impl Rng, positive: bool) -> Rational {
    let q = rng.gen_range(1..=12i128);
    let p = if positive { rng.gen_range(1..=60i128) } else { rng.gen_range(-60..=60i128) };
    Rational::new(p, q).unwrap()
}
