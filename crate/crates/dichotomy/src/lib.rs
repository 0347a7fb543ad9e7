//! Information orderings between pairs of statistical models.
//!
//! A *dichotomy* is a statistical experiment with two hypotheses: classically
//! a pair of probability vectors, quantum-mechanically a pair of density
//! matrices. This crate decides when one dichotomy is more informative than
//! another and searches for the maps that witness (or obstruct) such
//! orderings:
//!
//! - [`classical`] — finite dichotomies, the `‖p₀ − t·p₁‖₁` criterion, and
//!   the randomization (garbling) LP.
//! - [`quantum`] — density-matrix dichotomies, POVM-induced models, the
//!   Helstrom measurement, and a certified check of
//!   `‖ρ₀ − t·ρ₁‖₁ ≥ ‖σ₀ − t·σ₁‖₁` for all `t ≥ 0`.
//! - [`feasibility`] — existence of completely positive or decomposable
//!   positive trace-preserving maps carrying one state family onto another,
//!   posed over Choi matrices, plus a rigorous support obstruction.
//! - [`counterexample`] — a parametrized pair of families for which the
//!   classical ordering holds while no positive trace-preserving map exists,
//!   with closed-form norms and an end-to-end reproduction pipeline.
//!
//! The numerical backbone is a self-contained dense Hermitian kernel in
//! [`linalg`]; every tolerance lives in one [`Tolerances`] record.

pub mod classical;
pub mod counterexample;
pub mod error;
pub mod feasibility;
pub mod linalg;
pub mod quantum;
pub mod tol;

pub use error::{Error, Result};
pub use tol::Tolerances;

/// Outcome of a feasibility search. `Undecided` means the solver hit its
/// iteration budget without either a witness or a confident obstruction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Feasible,
    Infeasible,
    Undecided,
}

// The book chapters double as doc-tests so their code stays honest.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/classical.md")]
    mod classical {}
    #[doc = include_str!("../../../book/src/quantum.md")]
    mod quantum {}
    #[doc = include_str!("../../../book/src/maps.md")]
    mod maps {}
    #[doc = include_str!("../../../book/src/counterexample.md")]
    mod counterexample {}
}
