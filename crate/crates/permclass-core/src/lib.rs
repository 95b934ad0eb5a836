//! Exact machinery for two-by-four pattern-avoiding permutation classes.
//!
//! Everything in this crate is exact: permutations and pattern containment,
//! truncated power series over arbitrary-precision rationals, the catalog of
//! class generating functions, a brute-force enumeration oracle, and uniform
//! random samplers driven by slot-counting dynamic programming. No
//! floating-point value is produced anywhere; numeric evaluation of the
//! asymptotic data kept on catalog entries is left to downstream crates.
//!
//! The crate is `no_std` (with `alloc`) so the algorithmic core stays free of
//! IO concerns.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod catalog;
pub mod oracle;
pub mod perm;
pub mod sampler;
pub mod series;

pub use num_bigint::{BigInt, BigUint};
pub use num_rational::BigRational;
