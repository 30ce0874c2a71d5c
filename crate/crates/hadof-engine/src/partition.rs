/// Deterministic split of `{0..n−1}` into contiguous blocks of size `k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    subsets: Vec<Vec<usize>>,
    k: usize,
}

impl Partition {
    pub fn subsets(&self) -> &[Vec<usize>] {
        &self.subsets
    }

    /// `M = ceil(n/k)`.
    pub fn num_subsets(&self) -> usize {
        self.subsets.len()
    }

    pub fn k(&self) -> usize {
        self.k
    }
}

/// Contiguous index blocks `[0..k)`, `[k..2k)`, …; the final block holds the
/// remainder when `k` does not divide `n`.
pub fn make_partition(n: usize, k: usize) -> Partition {
    assert!(n >= 1 && k >= 1, "partition needs n >= 1 and k >= 1");
    let subsets = (0..n.div_ceil(k))
        .map(|b| (b * k..((b + 1) * k).min(n)).collect())
        .collect();
    Partition { subsets, k }
}
