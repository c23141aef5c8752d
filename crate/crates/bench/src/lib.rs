//! Shared inputs for the criterion benchmarks.

use mfbranch::{Family, RootSystem, Weight};

/// `k·ω_i` on a freshly built simple system.
pub fn pan_input(family: Family, rank: usize, node: usize, k: i64) -> (RootSystem, Weight) {
    let sys = RootSystem::build(family, rank).expect("valid type");
    (sys, Weight::fundamental_multiple(rank, node, k))
}
