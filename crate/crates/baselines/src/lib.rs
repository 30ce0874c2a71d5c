//! Classical reference solvers used for accuracy normalisation.
//!
//! The main entry point is [`simulated_annealing`], a Metropolis single-flip
//! annealer with a geometric inverse-temperature ramp and independent
//! restarts. [`ReferenceCache`] memoises the reference objective per
//! (problem, config) so repeated accuracy computations reuse one run.
//! Exhaustive enumeration for small instances re-exports from `qubo-core`.

mod sa;

pub use qubo_core::brute_force;
pub use sa::{simulated_annealing, ReferenceCache, SaConfig, SaResult};
