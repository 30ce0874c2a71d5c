use qubo_core::QuboProblem;

use crate::{AssemblyError, OverlapGraph, Result};

/// Context for decoding edge-variable solutions: variable `e` selects
/// `edges[e]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeDecoder {
    pub n_nodes: usize,
    /// (tail, head, weight) in variable order.
    pub edges: Vec<(usize, usize, usize)>,
}

/// Context for decoding permutation-matrix solutions: variable `v·N + j`
/// places vertex `v` at step `j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PermutationDecoder {
    pub n_nodes: usize,
    /// Directed adjacency as a flat row-major boolean matrix.
    pub has_edge: Vec<bool>,
}

impl PermutationDecoder {
    pub fn edge(&self, u: usize, v: usize) -> bool {
        self.has_edge[u * self.n_nodes + v]
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum DecoderContext {
    Edge(EdgeDecoder),
    Permutation(PermutationDecoder),
}

impl DecoderContext {
    pub fn num_variables(&self) -> usize {
        match self {
            DecoderContext::Edge(d) => d.edges.len(),
            DecoderContext::Permutation(d) => d.n_nodes * d.n_nodes,
        }
    }
}

/// Edge-variable Hamiltonian for acyclic graphs:
/// `A·Σ_u (1 − Σ_{out(u)} x)² + A·Σ_v (1 − Σ_{in(v)} x)²`.
///
/// Expanded over binary variables: every edge gets linear `−2A` (one `−A`
/// from its tail's out-constraint, one from its head's in-constraint), every
/// pair of distinct edges sharing a tail or sharing a head gets `+2A`, and
/// the constant `2·N·A` lands in the offset. A valid Hamiltonian path scores
/// exactly `2A` (its two endpoints each leave one constraint unsatisfied).
pub fn encode_edge_qubo(
    graph: &OverlapGraph,
    penalty: f64,
) -> Result<(QuboProblem, DecoderContext)> {
    if penalty <= 0.0 {
        return Err(AssemblyError::NonPositivePenalty(penalty));
    }
    if let Some(witness) = graph.find_cycle() {
        return Err(AssemblyError::CyclicGraph { witness });
    }
    let n = graph.n_nodes();
    let m = graph.n_edges();
    let mut qubo = QuboProblem::new(m);
    qubo.add_offset(2.0 * n as f64 * penalty);

    let mut out_group: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut in_group: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (var, e) in graph.edges().iter().enumerate() {
        out_group[e.tail].push(var);
        in_group[e.head].push(var);
    }
    for group in out_group.iter().chain(in_group.iter()) {
        for (a, &e) in group.iter().enumerate() {
            qubo.add_term(e, e, -penalty).expect("edge variable");
            for &f in &group[a + 1..] {
                qubo.add_term(e, f, 2.0 * penalty).expect("edge pair");
            }
        }
    }

    let decoder = EdgeDecoder {
        n_nodes: n,
        edges: graph
            .edges()
            .iter()
            .map(|e| (e.tail, e.head, e.weight))
            .collect(),
    };
    Ok((qubo, DecoderContext::Edge(decoder)))
}

/// Permutation-matrix Hamiltonian over `N²` variables `x_{v,j}` (vertex `v`
/// at step `j`, flat index `v·N + j`): row and column one-hot penalties plus
/// `+A` on `x_{u,j}·x_{v,j+1}` for every ordered non-edge `(u, v)`, `u ≠ v`.
/// Valid Hamiltonian paths over existing edges reach energy 0 with the
/// constant `2·N·A` included.
pub fn encode_permutation_qubo(
    graph: &OverlapGraph,
    penalty: f64,
) -> Result<(QuboProblem, DecoderContext)> {
    if penalty <= 0.0 {
        return Err(AssemblyError::NonPositivePenalty(penalty));
    }
    let n = graph.n_nodes();
    let idx = |v: usize, j: usize| v * n + j;
    let mut qubo = QuboProblem::new(n * n);
    qubo.add_offset(2.0 * n as f64 * penalty);

    // row one-hot: vertex v appears at exactly one step
    for v in 0..n {
        for j in 0..n {
            qubo.add_term(idx(v, j), idx(v, j), -penalty).expect("var");
            for j2 in j + 1..n {
                qubo.add_term(idx(v, j), idx(v, j2), 2.0 * penalty)
                    .expect("row pair");
            }
        }
    }
    // column one-hot: step j holds exactly one vertex
    for j in 0..n {
        for v in 0..n {
            qubo.add_term(idx(v, j), idx(v, j), -penalty).expect("var");
            for v2 in v + 1..n {
                qubo.add_term(idx(v, j), idx(v2, j), 2.0 * penalty)
                    .expect("column pair");
            }
        }
    }
    // forbidden transitions
    let mut has_edge = vec![false; n * n];
    for e in graph.edges() {
        has_edge[e.tail * n + e.head] = true;
    }
    for u in 0..n {
        for v in 0..n {
            if u == v || has_edge[u * n + v] {
                continue;
            }
            for j in 0..n.saturating_sub(1) {
                qubo.add_term(idx(u, j), idx(v, j + 1), penalty)
                    .expect("transition");
            }
        }
    }

    let decoder = PermutationDecoder {
        n_nodes: n,
        has_edge,
    };
    Ok((qubo, DecoderContext::Permutation(decoder)))
}
