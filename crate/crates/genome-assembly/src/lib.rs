//! Genome assembly as Hamiltonian-path optimisation on an overlap graph.
//!
//! Reads become nodes, exact suffix–prefix overlaps become weighted directed
//! edges, and recovering the genome means finding a path visiting every read
//! once. Two QUBO encodings are provided: an edge-variable form for acyclic
//! graphs (`M = |E|` variables) and the permutation-matrix form (`N²`
//! variables). Decoding validates degree and one-hot constraints and merging
//! splices the reads back into one sequence along the path.

mod encode;
mod graph;
mod path;
mod reads;

pub use encode::{
    encode_edge_qubo, encode_permutation_qubo, DecoderContext, EdgeDecoder, PermutationDecoder,
};
pub use graph::{compute_overlaps, graph_to_csv, longest_overlap, Edge, OverlapGraph};
pub use path::{decode_path, merge_sequence, PathSolution};
pub use reads::{parse_fasta, synthesize_reads, write_fasta, Read, ReadSet};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum AssemblyError {
    #[error("malformed fasta: {0}")]
    Fasta(String),

    #[error("read '{id}' contains illegal character '{ch}'")]
    IllegalCharacter { id: String, ch: char },

    #[error("duplicate read id '{0}'")]
    DuplicateId(String),

    #[error("read '{0}' has an empty sequence")]
    EmptyRead(String),

    #[error("overlap graph is cyclic; witness cycle through nodes {witness:?}")]
    CyclicGraph { witness: Vec<usize> },

    #[error("penalty coefficient must be positive, got {0}")]
    NonPositivePenalty(f64),

    #[error("solution has {got} bits but the encoding uses {expected}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("cannot merge an invalid path: {0}")]
    InvalidPath(String),

    #[error("read length {read_length} invalid for genome of length {genome_length}")]
    BadReadLength {
        read_length: usize,
        genome_length: usize,
    },

    #[error("stride must be at least 1")]
    BadStride,
}

pub type Result<T> = std::result::Result<T, AssemblyError>;
