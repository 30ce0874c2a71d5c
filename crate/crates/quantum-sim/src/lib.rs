//! Exact statevector simulation of the trotterised-annealing QAOA circuit.
//!
//! Registers are capped at [`MAX_QUBITS`] qubits. Basis states are indexed
//! with qubit 0 least significant; a bit value of 0 corresponds to spin +1 in
//! the Ising energy (see `qubo_core::spin_of_bit`). The cost layer is a
//! diagonal phase pass over precomputed basis energies and the mixer is
//! applied as independent single-qubit X rotations, so one layer costs
//! `O(k·2^k)` rather than a dense matrix product.

mod error;
mod sample;
mod schedule;
mod state;

pub mod rng;

pub use error::SimError;
pub use sample::{sample_bitstrings, sample_expectations, SampleSet};
pub use schedule::AnnealSchedule;
pub use state::{basis_energies, run_circuit, Statevector, MAX_QUBITS};

pub type Result<T> = std::result::Result<T, SimError>;
