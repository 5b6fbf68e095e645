//! Exact-arithmetic kernels for highest-weight Harish-Chandra module
//! computations: root systems with compact/noncompact gradings, admissible
//! positive systems and totally positive roots, weight multiplicities of
//! universal highest-weight modules, a PBW normal-ordering engine with the
//! Harish-Chandra projection, and the numeric big-cell factorization for
//! SU(p,q).
//!
//! Modules:
//! - [`rootsys`]: Cartan matrices, roots, weights, Weyl groups, positive systems
//! - [`hcpair`]: compact/noncompact gradings, admissibility, structure checks
//! - [`hwmod`]: weight multiplicities, partition functions, module criteria
//! - [`uea`]: enveloping-algebra rewriting, the projection to `U(h)`, Casimir
//! - [`hccell`]: SU(p,q) sampling, block factorization `g = p⁻·k·p⁺`, Iwasawa
//! - [`verify`]: the built-in verification suite driven by `hcrep verify-paper`
//!
//! All algebraic modules compute over arbitrary-precision rationals and are
//! deterministic; `hccell` uses `f64` with explicit tolerances and seeded
//! sampling.

// Index-style loops are the house idiom for the small dense matrix kernels.
#![allow(clippy::needless_range_loop)]

pub mod hccell;
pub mod hcpair;
pub mod hwmod;
pub mod rational;
pub mod rootsys;
pub mod uea;
pub mod verify;

pub use rational::{format_rat, parse_rat, Rat};
pub use rootsys::{
    CartanMatrix, PositiveSystem, Root, RootSystem, RootSystemError, RootSystemRef, Weight,
    WeylElement,
};
