//! Command-line front end, Monte Carlo experiments and file formats for the
//! dual-pivot "Count" quicksort analysis in `dpqs-core`.

pub mod cli;
pub mod error;
pub mod montecarlo;
pub mod report;
pub mod scatter;
