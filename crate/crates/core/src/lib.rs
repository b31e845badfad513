//! Pseudo-stochastic matrices and pseudo-positive maps.
//!
//! A pseudo-stochastic matrix has unit column sums but may carry negative
//! entries. Such matrices act on a convex subset `K` of the probability simplex
//! without leaving the simplex, and so witness non-membership in `K`. The same
//! idea on density matrices gives pseudo-positive maps. This crate provides:
//!
//! - [`simplex`]: probability vectors and convex regions of the simplex.
//! - [`matrix`]: classification, group operations, the sets `S(K)`, `PS(K)`,
//!   `S0(K)`, witness search and Birkhoff decomposition.
//! - [`classical`]: time-local classical master equations, propagators and
//!   (K-)divisibility, plus the closed-form two-level solution.
//! - [`quantum`]: density matrices, Hermitian trace-preserving maps, Bloch-ball
//!   regions and the reduction-map family.
//! - [`qubit`]: Pauli-channel dynamics and the CP / P / K_eps classifier.
//! - [`lie`]: generators, commutators and structure constants of the
//!   pseudo-stochastic Lie algebras for n = 2, 3.
//! - [`cli`]: the command-line front end.

// `!(x > 0.0)` also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

pub mod classical;
pub mod cli;
pub mod error;
pub mod lie;
pub mod matrix;
pub mod ode;
pub mod quadrature;
pub mod quantum;
pub mod qubit;
pub mod rates;
pub mod simplex;

pub use error::{Error, Result};

/// Default tolerance for membership and invariant checks.
pub const DEFAULT_TOL: f64 = 1e-9;

/// Default singularity threshold on `|det|`.
pub const SINGULAR_TOL: f64 = 1e-12;
