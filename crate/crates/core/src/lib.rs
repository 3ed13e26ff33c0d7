//! Stability arithmetic for holomorphic triples `T = (E1, E2, Φ)` over a
//! compact Riemann surface, and a numerical solver for the coupled vortex
//! equations in the line-bundle case on a flat torus.
//!
//! The algebraic side works only with discrete invariants (ranks and
//! degrees) in exact rational arithmetic:
//!
//! * [`invariants`]: the [`Rational`] type, triple and subtriple invariants,
//!   duality on invariants.
//! * [`stability`]: the functional `θ_τ`, the σ-slope, parameter conversions
//!   and the fully classified special cases.
//! * [`chambers`]: admissible parameter intervals, candidate walls,
//!   genericity, moduli dimension.
//! * [`reduction`]: slope bookkeeping for the equivariant extension over
//!   `X × P¹`.
//!
//! The analytic side lives in [`vortex`], which is the only module that uses
//! floating point. [`cli`] wires every operation to a batch command line.

pub mod chambers;
pub mod cli;
pub mod error;
pub mod invariants;
pub mod rational;
pub mod reduction;
pub mod stability;
pub mod vortex;

pub use error::{Error, Result};
pub use invariants::{SubtripleInvariants, TripleInvariants};
pub use rational::Rational;
