use std::collections::BTreeMap;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::{QuboError, Result};

/// Enumeration cap for [`brute_force`].
pub const BRUTE_FORCE_MAX_VARS: usize = 24;

/// A QUBO instance: minimise `offset + Σ_{i≤j} Q_ij x_i x_j` over `x ∈ {0,1}^n`.
///
/// Coefficients are stored sparsely on the upper triangle (`i ≤ j < n`);
/// inserting the same pair twice accumulates by addition, which keeps
/// penalty-term encoders composable. The constant `offset` is carried through
/// every conversion so sub-problem objectives stay comparable to the global
/// objective.
#[derive(Debug, Clone, PartialEq)]
pub struct QuboProblem {
    n: usize,
    coeffs: BTreeMap<(usize, usize), f64>,
    offset: f64,
}

impl QuboProblem {
    /// New all-zero problem over `n` variables.
    pub fn new(n: usize) -> Self {
        Self {
            n,
            coeffs: BTreeMap::new(),
            offset: 0.0,
        }
    }

    /// Build from a term list; pairs are normalised to `i ≤ j` and duplicates accumulate.
    pub fn from_terms(
        n: usize,
        terms: impl IntoIterator<Item = (usize, usize, f64)>,
        offset: f64,
    ) -> Result<Self> {
        let mut p = Self::new(n);
        p.offset = offset;
        for (i, j, v) in terms {
            p.add_term(i, j, v)?;
        }
        Ok(p)
    }

    /// Add `v` to the coefficient of the unordered pair `{i, j}`.
    pub fn add_term(&mut self, i: usize, j: usize, v: f64) -> Result<()> {
        let (a, b) = if i <= j { (i, j) } else { (j, i) };
        if b >= self.n {
            return Err(QuboError::IndexOutOfRange { i, j, n: self.n });
        }
        *self.coeffs.entry((a, b)).or_insert(0.0) += v;
        Ok(())
    }

    pub fn add_offset(&mut self, v: f64) {
        self.offset += v;
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn offset(&self) -> f64 {
        self.offset
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    /// Stored coefficient of the unordered pair `{i, j}`, zero when absent.
    pub fn coefficient(&self, i: usize, j: usize) -> f64 {
        let key = if i <= j { (i, j) } else { (j, i) };
        self.coeffs.get(&key).copied().unwrap_or(0.0)
    }

    /// Iterate stored terms in ascending `(i, j)` order.
    pub fn terms(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        self.coeffs.iter().map(|(&(i, j), &v)| (i, j, v))
    }

    /// Objective value of `x`: `offset + Σ_{i≤j} Q_ij x_i x_j`.
    pub fn evaluate(&self, x: &BinaryAssignment) -> Result<f64> {
        if x.len() != self.n {
            return Err(QuboError::DimensionMismatch {
                expected: self.n,
                got: x.len(),
            });
        }
        let bits = x.bits();
        let mut acc = self.offset;
        for (&(i, j), &v) in &self.coeffs {
            if bits[i] == 1 && bits[j] == 1 {
                acc += v;
            }
        }
        Ok(acc)
    }

    /// Flat-array form for evaluation-heavy loops (sample scoring, annealing).
    pub fn packed(&self) -> PackedEvaluator {
        let mut diag = vec![0.0; self.n];
        let mut pairs = Vec::new();
        for (&(i, j), &v) in &self.coeffs {
            if i == j {
                diag[i] = v;
            } else {
                pairs.push((i as u32, j as u32, v));
            }
        }
        PackedEvaluator {
            n: self.n,
            offset: self.offset,
            diag,
            pairs,
        }
    }

    /// Stable 64-bit fingerprint of the full instance (term order is canonical).
    pub fn fingerprint(&self) -> u64 {
        let mut h = 0xcbf2_9ce4_8422_2325u64 ^ self.n as u64;
        let mut mix = |w: u64| {
            h ^= w;
            h = h.wrapping_mul(0x0000_0100_0000_01b3);
        };
        mix(self.offset.to_bits());
        for (&(i, j), &v) in &self.coeffs {
            mix(i as u64);
            mix(j as u64);
            mix(v.to_bits());
        }
        h
    }
}

/// A binary assignment; bit `i` is the value of variable `x_i`.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct BinaryAssignment(Vec<u8>);

impl BinaryAssignment {
    /// From raw bits; every entry must be 0 or 1.
    pub fn new(bits: Vec<u8>) -> Self {
        debug_assert!(bits.iter().all(|&b| b <= 1));
        Self(bits)
    }

    pub fn zeros(n: usize) -> Self {
        Self(vec![0; n])
    }

    /// Decode a basis-state index; bit 0 of `index` is variable 0 (least significant).
    pub fn from_index(index: u64, n: usize) -> Self {
        Self((0..n).map(|i| ((index >> i) & 1) as u8).collect())
    }

    /// Basis-state index with variable 0 least significant.
    pub fn to_index(&self) -> u64 {
        self.0
            .iter()
            .enumerate()
            .fold(0u64, |acc, (i, &b)| acc | ((b as u64) << i))
    }

    pub fn bits(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for BinaryAssignment {
    /// Ket-style rendering: variable 0 is the rightmost character.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in self.0.iter().rev() {
            write!(f, "{b}")?;
        }
        Ok(())
    }
}

/// Flat-array evaluator built once per problem and reused across many assignments.
#[derive(Debug, Clone)]
pub struct PackedEvaluator {
    n: usize,
    offset: f64,
    diag: Vec<f64>,
    pairs: Vec<(u32, u32, f64)>,
}

impl PackedEvaluator {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Objective of a raw 0/1 bit slice. Length is the caller's responsibility.
    pub fn evaluate_bits(&self, bits: &[u8]) -> f64 {
        debug_assert_eq!(bits.len(), self.n);
        let mut acc = self.offset;
        for i in 0..self.n {
            if bits[i] == 1 {
                acc += self.diag[i];
            }
        }
        for &(i, j, v) in &self.pairs {
            acc += v * (bits[i as usize] & bits[j as usize]) as f64;
        }
        acc
    }
}

/// Uniform random dense instance: every `(i, j)` with `i ≤ j` draws from `[lo, hi)`.
///
/// Draw order is row-major over the upper triangle, so a fixed seed is
/// bit-reproducible across runs and worker counts.
pub fn random_qubo(n: usize, lo: f64, hi: f64, seed: u64) -> Result<QuboProblem> {
    if n == 0 {
        return Err(QuboError::EmptyProblem);
    }
    if !(lo < hi) {
        return Err(QuboError::InvalidBounds { lo, hi });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut p = QuboProblem::new(n);
    for i in 0..n {
        for j in i..n {
            p.add_term(i, j, rng.random_range(lo..hi))?;
        }
    }
    Ok(p)
}

/// Exhaustive global minimiser for `n ≤ 24`.
///
/// Ties break toward the lowest basis-state index (bit 0 least significant).
pub fn brute_force(problem: &QuboProblem) -> Result<(BinaryAssignment, f64)> {
    let n = problem.n();
    if n == 0 {
        return Err(QuboError::EmptyProblem);
    }
    if n > BRUTE_FORCE_MAX_VARS {
        return Err(QuboError::TooLarge {
            n,
            max: BRUTE_FORCE_MAX_VARS,
        });
    }
    let packed = problem.packed();
    let mut bits = vec![0u8; n];
    let mut best_index = 0u64;
    let mut best = packed.evaluate_bits(&bits);
    for index in 1..(1u64 << n) {
        for (i, b) in bits.iter_mut().enumerate() {
            *b = ((index >> i) & 1) as u8;
        }
        let value = packed.evaluate_bits(&bits);
        if value < best {
            best = value;
            best_index = index;
        }
    }
    Ok((BinaryAssignment::from_index(best_index, n), best))
}
