//! Experiment harness for ordered-space and heavy-tailed walk simulations:
//! validated configuration, reproducible parallel sweeps, power-law exponent
//! fits, and named verification suites. The `fatwalk` binary is a thin CLI
//! over these modules.

pub mod config;
pub mod fit;
pub mod suites;
pub mod sweep;
