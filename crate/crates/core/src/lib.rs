//! Computable thermodynamic formalism on finitely generated groups: word-metric
//! geometry, subshifts of finite type, interactions and potentials with their
//! induced cocycles, and DLR specification kernels on finite windows, together
//! with numerical certification of the DLR/conformal correspondence at desk
//! scale.
//!
//! The crate is organized around immutable values and pure functions; the
//! scan-heavy inner loops run on rayon when the `parallel` feature (default)
//! is enabled and fall back to sequential execution otherwise, with identical
//! results either way.

pub mod dlr;
pub mod error;
pub mod exec;
pub mod group;
pub mod interaction;
pub mod onedim;
pub mod potential;
pub mod subshift;

pub use error::{Error, Result};
pub use group::{ball, shell_counts, sphere_ratio_sup, BallTable, Element, GroupSpec, LatticeGens};

use std::sync::OnceLock;

/// Default cap on enumerated candidate spaces (fillings, pattern tables).
pub const DEFAULT_ENUM_BUDGET: u128 = 1 << 21;

/// Enumeration budget, overridable through `SHIFTGIBBS_ENUM_BUDGET`. Read once
/// per process.
pub fn enumeration_budget() -> u128 {
    static BUDGET: OnceLock<u128> = OnceLock::new();
    *BUDGET.get_or_init(|| {
        std::env::var("SHIFTGIBBS_ENUM_BUDGET")
            .ok()
            .and_then(|s| s.parse().ok())
            .unwrap_or(DEFAULT_ENUM_BUDGET)
    })
}
