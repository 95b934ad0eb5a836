//! Floating-point and IO layer over [`permclass_core`]: singularity-analysis
//! asymptotics, growth-rate estimation, and the output formats used by the
//! `permclass` binary.
//!
//! The split is deliberate: everything in the core crate is exact, and this
//! crate is the one place where numbers become `f64`.

pub mod asym;
pub mod format;

pub use permclass_core::{catalog, oracle, perm, sampler, series};
