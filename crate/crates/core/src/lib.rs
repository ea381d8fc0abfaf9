//! Dual-pivot quicksort "Count" with exact cost instrumentation, and the
//! machinery to analyse it: exact mean formulas in rational arithmetic, the
//! Pólya urn behind its classification sequence, and a sampler for the
//! bivariate limit law of its normalized comparison and swap counts.
//!
//! The crate is `no_std` and only needs `alloc`.
#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod classic;
pub mod cost;
pub mod count;
pub mod decimal;
pub mod error;
pub mod exact;
pub mod exhaustive;
pub mod perm;
pub mod rde;
pub mod rng;
pub mod stats;
pub mod urn;

pub use classic::sort_classic;
pub use cost::{rotate3, CostProfile};
pub use count::{partition_count, sort_count, sort_count_observed, PartitionOutcome};
pub use error::{Error, Result};
pub use exact::Rational;
