use crate::ReadSet;

/// Directed overlap edge: the last `weight` bases of `tail` equal the first
/// `weight` bases of `head`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Edge {
    pub tail: usize,
    pub head: usize,
    pub weight: usize,
}

/// Reads as nodes, suffix–prefix overlaps as edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OverlapGraph {
    n_nodes: usize,
    edges: Vec<Edge>,
    min_overlap: usize,
    acyclic: bool,
}

impl OverlapGraph {
    pub fn n_nodes(&self) -> usize {
        self.n_nodes
    }

    /// Edges in lexicographic (tail, head) order, the variable order used by
    /// the encoders.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn n_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn min_overlap(&self) -> usize {
        self.min_overlap
    }

    pub fn is_acyclic(&self) -> bool {
        self.acyclic
    }

    /// Weight of the edge (tail, head) if present.
    pub fn weight(&self, tail: usize, head: usize) -> Option<usize> {
        self.edges
            .binary_search_by(|e| (e.tail, e.head).cmp(&(tail, head)))
            .ok()
            .map(|i| self.edges[i].weight)
    }

    /// Drop every edge implied by a two-edge detour: `(u, v)` is removed when
    /// some `w` has both `(u, w)` and `(w, v)`. Off by default since real
    /// overlap graphs keep their transitive edges; useful to thin dense
    /// window graphs before encoding.
    pub fn transitive_reduction(&self) -> OverlapGraph {
        let present: std::collections::HashSet<(usize, usize)> =
            self.edges.iter().map(|e| (e.tail, e.head)).collect();
        let edges: Vec<Edge> = self
            .edges
            .iter()
            .filter(|e| {
                !self.edges.iter().any(|mid| {
                    mid.tail == e.tail
                        && mid.head != e.head
                        && present.contains(&(mid.head, e.head))
                })
            })
            .cloned()
            .collect();
        let mut reduced = OverlapGraph {
            n_nodes: self.n_nodes,
            edges,
            min_overlap: self.min_overlap,
            acyclic: true,
        };
        reduced.acyclic = reduced.find_cycle().is_none();
        reduced
    }

    /// Some cycle through the graph, when one exists.
    pub fn find_cycle(&self) -> Option<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n_nodes];
        for e in &self.edges {
            adj[e.tail].push(e.head);
        }
        // 0 = unvisited, 1 = on stack, 2 = done
        let mut state = vec![0u8; self.n_nodes];
        let mut stack: Vec<usize> = Vec::new();
        fn dfs(
            v: usize,
            adj: &[Vec<usize>],
            state: &mut [u8],
            stack: &mut Vec<usize>,
        ) -> Option<Vec<usize>> {
            state[v] = 1;
            stack.push(v);
            for &w in &adj[v] {
                if state[w] == 1 {
                    let pos = stack.iter().position(|&x| x == w).expect("on stack");
                    return Some(stack[pos..].to_vec());
                }
                if state[w] == 0 {
                    if let Some(cycle) = dfs(w, adj, state, stack) {
                        return Some(cycle);
                    }
                }
            }
            stack.pop();
            state[v] = 2;
            None
        }
        for v in 0..self.n_nodes {
            if state[v] == 0 {
                if let Some(cycle) = dfs(v, &adj, &mut state, &mut stack) {
                    return Some(cycle);
                }
            }
        }
        None
    }
}

/// Longest proper suffix of `u` equal to a prefix of `v`, capped below the
/// shorter read's length. KMP prefix function over `v # u`.
pub fn longest_overlap(u: &str, v: &str) -> usize {
    let cap = u.len().min(v.len()).saturating_sub(1);
    if cap == 0 {
        return 0;
    }
    let mut s = Vec::with_capacity(v.len() + 1 + u.len());
    s.extend_from_slice(v.as_bytes());
    s.push(b'#');
    s.extend_from_slice(u.as_bytes());
    let mut pi = vec![0usize; s.len()];
    for i in 1..s.len() {
        let mut m = pi[i - 1];
        while m > 0 && s[i] != s[m] {
            m = pi[m - 1];
        }
        if s[i] == s[m] {
            m += 1;
        }
        pi[i] = m;
    }
    let mut w = pi[s.len() - 1];
    while w > cap {
        w = pi[w - 1];
    }
    w
}

/// Build the overlap graph: edge `(u, v)` with weight `w` iff the longest
/// proper suffix-prefix overlap between reads `u` and `v` has `w >= min_overlap`.
pub fn compute_overlaps(reads: &ReadSet, min_overlap: usize) -> OverlapGraph {
    assert!(min_overlap >= 1, "min_overlap must be at least 1");
    let n = reads.len();
    let mut edges = Vec::new();
    for tail in 0..n {
        for head in 0..n {
            if tail == head {
                continue;
            }
            let w = longest_overlap(&reads.get(tail).seq, &reads.get(head).seq);
            if w >= min_overlap {
                edges.push(Edge {
                    tail,
                    head,
                    weight: w,
                });
            }
        }
    }
    let mut graph = OverlapGraph {
        n_nodes: n,
        edges,
        min_overlap,
        acyclic: true,
    };
    graph.acyclic = graph.find_cycle().is_none();
    graph
}

/// Edge-list CSV export with read ids: `tail,head,weight`.
pub fn graph_to_csv(graph: &OverlapGraph, reads: &ReadSet) -> String {
    let mut out = String::from("tail,head,weight\n");
    for e in graph.edges() {
        out.push_str(&format!(
            "{},{},{}\n",
            reads.get(e.tail).id,
            reads.get(e.head).id,
            e.weight
        ));
    }
    out
}
