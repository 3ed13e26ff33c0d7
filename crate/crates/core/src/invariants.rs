//! Discrete invariants of triples and subtriples, and duality on them.
//!
//! A triple `T = (E1, E2, Φ)` with `Φ: E2 → E1` enters every computation
//! only through `(r1, r2, d1, d2)`, the ranks and degrees of `E1` and `E2`.
//! A subtriple `T' = (E1', E2', Φ')` likewise enters through
//! `(r1', r2', d1', d2')`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::Rational;

/// Common read access to ranks and degrees of a triple or subtriple.
pub trait RankDegree {
    fn r1(&self) -> i64;
    fn r2(&self) -> i64;
    fn d1(&self) -> i64;
    fn d2(&self) -> i64;

    fn total_rank(&self) -> i64 {
        self.r1() + self.r2()
    }

    fn total_degree(&self) -> i64 {
        self.d1() + self.d2()
    }

    /// `μ(E1 ⊕ E2)`.
    fn total_slope(&self) -> Result<Rational> {
        slope(self.total_degree(), self.total_rank())
    }
}

/// `μ = d / r`.
pub fn slope(d: i64, r: i64) -> Result<Rational> {
    if r <= 0 {
        return Err(Error::InvalidRank(r));
    }
    Ok(Rational::new(d as i128, r as i128).expect("positive rank"))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "[i64; 4]", into = "[i64; 4]")]
pub struct TripleInvariants {
    r1: i64,
    r2: i64,
    d1: i64,
    d2: i64,
}

impl TripleInvariants {
    pub fn new(r1: i64, r2: i64, d1: i64, d2: i64) -> Result<Self> {
        for r in [r1, r2] {
            if r < 1 {
                return Err(Error::InvalidRank(r));
            }
        }
        Ok(TripleInvariants { r1, r2, d1, d2 })
    }

    pub fn mu1(&self) -> Rational {
        slope(self.d1, self.r1).expect("validated rank")
    }

    pub fn mu2(&self) -> Rational {
        slope(self.d2, self.r2).expect("validated rank")
    }

    /// `μ(T) = μ(E1 ⊕ E2)`.
    pub fn mu(&self) -> Rational {
        self.total_slope().expect("validated rank")
    }

    /// The triple viewed as its own (improper) subtriple.
    pub fn as_subtriple(&self) -> SubtripleInvariants {
        SubtripleInvariants {
            r1p: self.r1,
            r2p: self.r2,
            d1p: self.d1,
            d2p: self.d2,
        }
    }
}

impl RankDegree for TripleInvariants {
    fn r1(&self) -> i64 {
        self.r1
    }
    fn r2(&self) -> i64 {
        self.r2
    }
    fn d1(&self) -> i64 {
        self.d1
    }
    fn d2(&self) -> i64 {
        self.d2
    }
}

impl TryFrom<[i64; 4]> for TripleInvariants {
    type Error = Error;
    fn try_from(v: [i64; 4]) -> Result<Self> {
        TripleInvariants::new(v[0], v[1], v[2], v[3])
    }
}

impl From<TripleInvariants> for [i64; 4] {
    fn from(t: TripleInvariants) -> Self {
        [t.r1, t.r2, t.d1, t.d2]
    }
}

impl fmt::Display for TripleInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{},{})", self.r1, self.r2, self.d1, self.d2)
    }
}

impl FromStr for TripleInvariants {
    type Err = Error;
    /// `"r1,r2,d1,d2"`.
    fn from_str(s: &str) -> Result<Self> {
        let v = parse_quadruple(s, "triple")?;
        TripleInvariants::new(v[0], v[1], v[2], v[3])
    }
}

/// Invariants of a nontrivial subtriple. Zero-rank components carry degree 0.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "[i64; 4]", into = "[i64; 4]")]
pub struct SubtripleInvariants {
    r1p: i64,
    r2p: i64,
    d1p: i64,
    d2p: i64,
}

impl SubtripleInvariants {
    pub fn new(r1p: i64, r2p: i64, d1p: i64, d2p: i64) -> Result<Self> {
        let shown = format!("({r1p},{r2p},{d1p},{d2p})");
        if r1p < 0 || r2p < 0 {
            return Err(Error::InvalidSubtriple(format!("{shown} has a negative rank")));
        }
        if r1p == 0 && r2p == 0 {
            return Err(Error::InvalidSubtriple(format!("{shown} is trivial")));
        }
        if (r1p == 0 && d1p != 0) || (r2p == 0 && d2p != 0) {
            return Err(Error::InvalidSubtriple(format!(
                "{shown}: a zero-rank component must have degree 0"
            )));
        }
        Ok(SubtripleInvariants { r1p, r2p, d1p, d2p })
    }

    /// Checks that these invariants can occur for a subtriple of `t`: ranks
    /// fit, and a full-rank component has degree at most that of the
    /// ambient bundle.
    pub fn check_within(&self, t: &TripleInvariants) -> Result<()> {
        if self.r1p > t.r1 || self.r2p > t.r2 {
            return Err(Error::InvalidSubtriple(format!(
                "{self} has ranks exceeding those of {t}"
            )));
        }
        if (self.r1p == t.r1 && self.d1p > t.d1) || (self.r2p == t.r2 && self.d2p > t.d2) {
            return Err(Error::InvalidSubtriple(format!(
                "{self}: a full-rank subsheaf of {t} cannot have larger degree"
            )));
        }
        Ok(())
    }

    /// True when the invariants coincide with those of `t` itself.
    pub fn is_full(&self, t: &TripleInvariants) -> bool {
        *self == t.as_subtriple()
    }

    /// `μ(E1' ⊕ E2')`.
    pub fn mu(&self) -> Rational {
        self.total_slope().expect("nontrivial subtriple")
    }
}

impl RankDegree for SubtripleInvariants {
    fn r1(&self) -> i64 {
        self.r1p
    }
    fn r2(&self) -> i64 {
        self.r2p
    }
    fn d1(&self) -> i64 {
        self.d1p
    }
    fn d2(&self) -> i64 {
        self.d2p
    }
}

impl TryFrom<[i64; 4]> for SubtripleInvariants {
    type Error = Error;
    fn try_from(v: [i64; 4]) -> Result<Self> {
        SubtripleInvariants::new(v[0], v[1], v[2], v[3])
    }
}

impl From<SubtripleInvariants> for [i64; 4] {
    fn from(t: SubtripleInvariants) -> Self {
        [t.r1p, t.r2p, t.d1p, t.d2p]
    }
}

impl fmt::Display for SubtripleInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{},{})", self.r1p, self.r2p, self.d1p, self.d2p)
    }
}

impl FromStr for SubtripleInvariants {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let v = parse_quadruple(s, "subtriple")?;
        SubtripleInvariants::new(v[0], v[1], v[2], v[3])
    }
}

fn parse_quadruple(s: &str, what: &'static str) -> Result<[i64; 4]> {
    let err = |reason: &str| Error::Parse {
        what,
        input: s.to_string(),
        reason: reason.to_string(),
    };
    let parts = s
        .trim()
        .trim_start_matches('(')
        .trim_end_matches(')')
        .split(',')
        .map(|p| p.trim().parse::<i64>())
        .collect::<std::result::Result<Vec<_>, _>>()
        .map_err(|_| err("expected four integers r1,r2,d1,d2"))?;
    parts
        .try_into()
        .map_err(|_| err("expected exactly four integers r1,r2,d1,d2"))
}

/// Invariants of the dual triple `T* = (E2*, E1*, Φ*)`.
pub fn dual_invariants(t: &TripleInvariants) -> TripleInvariants {
    TripleInvariants {
        r1: t.r2,
        r2: t.r1,
        d1: -t.d2,
        d2: -t.d1,
    }
}

/// The subtriple of `T*` that corresponds to `T' ⊂ T`: take the quotient
/// `T'' = T / T'` and dualize it.
///
/// A full-rank component of `tp` must have the full degree, otherwise the
/// quotient has torsion and does not dualize to a subbundle.
pub fn dual_subtriple(t: &TripleInvariants, tp: &SubtripleInvariants) -> Result<SubtripleInvariants> {
    tp.check_within(t)?;
    if (tp.r1p == t.r1 && tp.d1p != t.d1) || (tp.r2p == t.r2 && tp.d2p != t.d2) {
        return Err(Error::InvalidSubtriple(format!(
            "{tp} is not saturated in {t}: the quotient has torsion"
        )));
    }
    let (q1r, q2r) = (t.r1 - tp.r1p, t.r2 - tp.r2p);
    let (q1d, q2d) = (t.d1 - tp.d1p, t.d2 - tp.d2p);
    SubtripleInvariants::new(q2r, q1r, -q2d, -q1d).map_err(|_| {
        Error::InvalidSubtriple(format!("{tp} is the whole of {t}; its quotient is trivial"))
    })
}
