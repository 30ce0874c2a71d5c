//! QUBO problem representation and core conversions.
//!
//! A QUBO instance minimises `x^T Q x + offset` over binary `x`, with `Q`
//! stored sparsely as an upper-triangular coefficient map. This crate owns
//! the problem type, objective evaluation, the QUBO ↔ Ising conversion used
//! by the circuit simulator, seeded random instance generation, and an
//! exhaustive-enumeration solver for small instances.

mod error;
mod ising;
mod problem;

pub mod io;

pub use error::QuboError;
pub use ising::{spin_of_bit, spins_of_assignment, IsingModel};
pub use problem::{brute_force, random_qubo, BinaryAssignment, PackedEvaluator, QuboProblem};

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, QuboError>;
