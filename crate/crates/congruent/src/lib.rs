//! Congruent-number constructions with exact rational certificates.
//!
//! A positive integer `n` is *congruent* when it is the area of a right
//! triangle with rational sides. This crate builds congruent numbers along
//! several elementary routes and backs every claim with an explicit
//! [`CongruentCertificate`]: a rational right triangle whose area equals `n`,
//! checked in exact arithmetic.
//!
//! The construction routes:
//!
//! - [`triples`]: Pythagorean triples from the classic `(s, t)`
//!   parametrization, the three triple transforms, and the five congruent
//!   numbers each triple yields.
//! - [`families`]: two-parameter polynomial families and the 21
//!   one-parameter families indexed by residue class, with printed-vs-derived
//!   cross-checking.
//! - [`pell`]: continued fractions of `√d`, fundamental solutions of
//!   `x² − dy² = ±1`, and solvability predicates.
//! - [`pipeline`]: Pell solutions turned into certified congruent numbers.
//! - [`arith`]: exact integer and rational support: factorization,
//!   square-free parts, square predicates.
//!
//! Everything is arbitrary precision; there is no floating point anywhere.

pub mod arith;
pub mod families;
pub mod pell;
pub mod pipeline;
pub mod rational;
pub mod triples;

pub use arith::Factorization;
pub use pell::{CfExpansion, PellSolution};
pub use pipeline::{CongruentCertificate, PellCongruentResult};
pub use rational::Rational;
pub use triples::{PythTriple, TriplePair};

use thiserror::Error;

/// Errors shared across the construction modules.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Input outside an operation's domain (zero where positive required, etc).
    #[error("domain error: {0}")]
    Domain(String),
    /// Triple parameters violating the `s > t ≥ 1`, coprime, opposite-parity rules.
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    /// `n ≡ 2 (mod 4)` cannot be written as a difference of two squares.
    #[error("{0} is not representable as a difference of two squares (n - 2 divisible by 4)")]
    NotRepresentable(String),
    /// Continued-fraction expansion requested for a perfect square.
    #[error("{0} is a perfect square; √d is not a quadratic irrational")]
    NotQuadraticIrrational(String),
    /// `x² − dy² = −1` has no integer solutions for this `d`.
    #[error("x² − {0}y² = -1 has no integer solutions")]
    Unsolvable(String),
    /// `d` is not of the admissible form `2·p₁⋯pₘ` with distinct primes ≡ 1 (mod 4).
    #[error("{0} is not admissible: {1}")]
    NotAdmissible(String, String),
    /// `d ≡ 2 (mod 4)` is excluded from the positive-Pell congruent route.
    #[error("{0} ≡ 2 (mod 4) is outside the stated residue classes")]
    WrongResidue(String),
    /// Certification was asked to scale by a non-square ratio; indicates a bug upstream.
    #[error("certification failed: {0}/{1} is not a perfect square")]
    ScaleNotSquare(String, String),
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
