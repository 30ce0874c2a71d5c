use std::collections::BTreeMap;

use crate::{BinaryAssignment, QuboProblem};

/// Ising form of a (sub-)QUBO: `E(z) = Σ_i h_i z_i + Σ_{i<j} J_ij z_i z_j + offset`
/// over spins `z ∈ {−1, +1}^k`.
///
/// The conversion uses `x_i = (1 − z_i) / 2`, so bit 0 maps to spin +1 and
/// bit 1 to spin −1.
#[derive(Debug, Clone, PartialEq)]
pub struct IsingModel {
    h: Vec<f64>,
    couplings: BTreeMap<(usize, usize), f64>,
    offset: f64,
}

/// Spin value of a bit under the crate-wide convention: 0 → +1, 1 → −1.
#[inline]
pub fn spin_of_bit(bit: u8) -> i8 {
    1 - 2 * (bit as i8)
}

impl IsingModel {
    pub fn new(h: Vec<f64>, couplings: BTreeMap<(usize, usize), f64>, offset: f64) -> Self {
        debug_assert!(couplings.keys().all(|&(i, j)| i < j && j < h.len()));
        Self {
            h,
            couplings,
            offset,
        }
    }

    /// Spin count.
    pub fn k(&self) -> usize {
        self.h.len()
    }

    pub fn fields(&self) -> &[f64] {
        &self.h
    }

    pub fn couplings(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        self.couplings.iter().map(|(&(i, j), &v)| (i, j, v))
    }

    pub fn offset(&self) -> f64 {
        self.offset
    }

    /// Energy of a spin assignment over {−1, +1}.
    pub fn energy(&self, spins: &[i8]) -> f64 {
        debug_assert_eq!(spins.len(), self.k());
        let mut acc = self.offset;
        for (i, &hi) in self.h.iter().enumerate() {
            acc += hi * spins[i] as f64;
        }
        for (&(i, j), &v) in &self.couplings {
            acc += v * (spins[i] * spins[j]) as f64;
        }
        acc
    }

    /// Largest absolute field or coupling magnitude (0 for the empty model).
    pub fn max_abs_coefficient(&self) -> f64 {
        let h_max = self.h.iter().fold(0.0f64, |m, &x| m.max(x.abs()));
        self.couplings.values().fold(h_max, |m, &v| m.max(v.abs()))
    }

    /// Multiply every field, coupling and the offset by `factor`.
    pub fn scaled(&self, factor: f64) -> IsingModel {
        IsingModel {
            h: self.h.iter().map(|&x| x * factor).collect(),
            couplings: self
                .couplings
                .iter()
                .map(|(&key, &v)| (key, v * factor))
                .collect(),
            offset: self.offset * factor,
        }
    }

    /// Energy of the computational-basis state `b` (bit 0 least significant,
    /// bit value 0 meaning spin +1).
    pub fn energy_of_basis(&self, b: u64) -> f64 {
        let mut acc = self.offset;
        for (i, &hi) in self.h.iter().enumerate() {
            acc += hi * spin_of_bit(((b >> i) & 1) as u8) as f64;
        }
        for (&(i, j), &v) in &self.couplings {
            let parity = ((b >> i) ^ (b >> j)) & 1;
            acc += v * (1 - 2 * parity as i8) as f64;
        }
        acc
    }
}

impl QuboProblem {
    /// Convert to Ising form under `x_i = (1 − z_i) / 2`.
    ///
    /// The resulting energy matches the QUBO objective on every assignment,
    /// offset included.
    pub fn to_ising(&self) -> IsingModel {
        let n = self.n();
        let mut h = vec![0.0; n];
        let mut couplings: BTreeMap<(usize, usize), f64> = BTreeMap::new();
        let mut offset = self.offset();
        for (i, j, q) in self.terms() {
            if i == j {
                // q·x = q/2 − q/2·z
                offset += q / 2.0;
                h[i] -= q / 2.0;
            } else {
                // q·x_i·x_j = q/4·(1 − z_i − z_j + z_i z_j)
                offset += q / 4.0;
                h[i] -= q / 4.0;
                h[j] -= q / 4.0;
                *couplings.entry((i, j)).or_insert(0.0) += q / 4.0;
            }
        }
        couplings.retain(|_, v| *v != 0.0);
        IsingModel::new(h, couplings, offset)
    }
}

/// Spin vector of a binary assignment under the bit → spin convention.
pub fn spins_of_assignment(x: &BinaryAssignment) -> Vec<i8> {
    x.bits().iter().map(|&b| spin_of_bit(b)).collect()
}
