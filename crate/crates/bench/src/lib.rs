//! Benchmark-only package; see `benches/kernels.rs`.
//!
//! Shared fixtures for the benchmarks live here so the bench target stays
//! small.

use std::sync::Arc;

use hcrep_core::hcpair::HcPair;
use hcrep_core::rootsys::{CartanMatrix, RootSystem, RootSystemRef};

/// The su(2,2)-pattern fixture used by several benchmarks.
pub fn a3_pair() -> HcPair {
    HcPair::build(a3(), &[1]).expect("valid marking")
}

pub fn a3() -> RootSystemRef {
    Arc::new(RootSystem::new(CartanMatrix::of_series('A', 3).unwrap()).unwrap())
}
