use qubo_core::BinaryAssignment;

use crate::{AssemblyError, DecoderContext, OverlapGraph, ReadSet, Result};

/// A decoded (attempted) path. `valid` is false with a diagnostic when the
/// assignment violates the path constraints; decoding itself never fails
/// except on a length mismatch.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathSolution {
    /// Visited nodes in order (empty when invalid).
    pub order: Vec<usize>,
    pub selected_edges: Vec<(usize, usize)>,
    pub valid: bool,
    pub diagnostic: Option<String>,
}

impl PathSolution {
    fn invalid(selected_edges: Vec<(usize, usize)>, diagnostic: String) -> Self {
        Self {
            order: Vec::new(),
            selected_edges,
            valid: false,
            diagnostic: Some(diagnostic),
        }
    }
}

/// Interpret a solver assignment as a path.
///
/// Edge encoding: selected edges must have in/out degree at most 1 per node
/// and form a single connected chain over the nodes they touch. Permutation
/// encoding: rows and columns must be one-hot and every consecutive step
/// must follow an existing edge.
pub fn decode_path(solution: &BinaryAssignment, context: &DecoderContext) -> Result<PathSolution> {
    if solution.len() != context.num_variables() {
        return Err(AssemblyError::LengthMismatch {
            expected: context.num_variables(),
            got: solution.len(),
        });
    }
    match context {
        DecoderContext::Edge(decoder) => Ok(decode_edge_solution(solution, decoder)),
        DecoderContext::Permutation(decoder) => Ok(decode_permutation_solution(solution, decoder)),
    }
}

fn decode_edge_solution(solution: &BinaryAssignment, decoder: &crate::EdgeDecoder) -> PathSolution {
    let n = decoder.n_nodes;
    let selected: Vec<(usize, usize)> = decoder
        .edges
        .iter()
        .zip(solution.bits())
        .filter(|(_, &bit)| bit == 1)
        .map(|(&(tail, head, _), _)| (tail, head))
        .collect();
    if selected.is_empty() {
        return PathSolution::invalid(selected, "no edges selected".into());
    }

    let mut successor = vec![usize::MAX; n];
    let mut in_degree = vec![0usize; n];
    for &(tail, head) in &selected {
        if successor[tail] != usize::MAX {
            return PathSolution::invalid(selected, format!("out-degree 2 at node {tail}"));
        }
        successor[tail] = head;
        in_degree[head] += 1;
        if in_degree[head] > 1 {
            return PathSolution::invalid(selected, format!("in-degree 2 at node {head}"));
        }
    }

    // Chain start: a tail that is nobody's head.
    let touched: Vec<usize> = (0..n)
        .filter(|&v| successor[v] != usize::MAX || in_degree[v] > 0)
        .collect();
    let starts: Vec<usize> = touched
        .iter()
        .copied()
        .filter(|&v| successor[v] != usize::MAX && in_degree[v] == 0)
        .collect();
    if starts.len() != 1 {
        return PathSolution::invalid(
            selected,
            format!(
                "{} chain starts; selection is disconnected or cyclic",
                starts.len()
            ),
        );
    }

    let mut order = vec![starts[0]];
    let mut current = starts[0];
    while successor[current] != usize::MAX {
        current = successor[current];
        if order.contains(&current) {
            return PathSolution::invalid(selected, format!("cycle revisits node {current}"));
        }
        order.push(current);
    }
    if order.len() != touched.len() {
        return PathSolution::invalid(
            selected,
            "selected edges form more than one component".into(),
        );
    }

    PathSolution {
        order,
        selected_edges: selected,
        valid: true,
        diagnostic: None,
    }
}

fn decode_permutation_solution(
    solution: &BinaryAssignment,
    decoder: &crate::PermutationDecoder,
) -> PathSolution {
    let n = decoder.n_nodes;
    let bit = |v: usize, j: usize| solution.bits()[v * n + j];
    for v in 0..n {
        let row: usize = (0..n).map(|j| bit(v, j) as usize).sum();
        if row != 1 {
            return PathSolution::invalid(vec![], format!("vertex {v} appears {row} times"));
        }
    }
    let mut order = vec![usize::MAX; n];
    for j in 0..n {
        let col: Vec<usize> = (0..n).filter(|&v| bit(v, j) == 1).collect();
        if col.len() != 1 {
            return PathSolution::invalid(vec![], format!("step {j} holds {} vertices", col.len()));
        }
        order[j] = col[0];
    }
    let mut selected = Vec::with_capacity(n.saturating_sub(1));
    for j in 0..n.saturating_sub(1) {
        let (u, v) = (order[j], order[j + 1]);
        if !decoder.edge(u, v) {
            return PathSolution::invalid(
                selected,
                format!("no edge between consecutive vertices {u} and {v}"),
            );
        }
        selected.push((u, v));
    }
    PathSolution {
        order,
        selected_edges: selected,
        valid: true,
        diagnostic: None,
    }
}

/// Concatenate the reads along a valid path, dropping each overlap prefix:
/// `read_0 + read_1[w_01..] + …`.
pub fn merge_sequence(
    path: &PathSolution,
    reads: &ReadSet,
    graph: &OverlapGraph,
) -> Result<String> {
    if !path.valid {
        return Err(AssemblyError::InvalidPath(
            path.diagnostic.clone().unwrap_or_else(|| "invalid".into()),
        ));
    }
    let mut merged = reads.get(path.order[0]).seq.clone();
    for pair in path.order.windows(2) {
        let (u, v) = (pair[0], pair[1]);
        let w = graph.weight(u, v).ok_or_else(|| {
            AssemblyError::InvalidPath(format!("path uses missing edge ({u}, {v})"))
        })?;
        merged.push_str(&reads.get(v).seq[w..]);
    }
    Ok(merged)
}
