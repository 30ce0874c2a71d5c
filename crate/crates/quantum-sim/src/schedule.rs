use crate::{Result, SimError};

/// Fixed annealing-style QAOA parameters: `betas` fall toward 0 while `gammas`
/// climb toward 1 across the layers, standing in for the classical outer loop.
#[derive(Debug, Clone, PartialEq)]
pub struct AnnealSchedule {
    betas: Vec<f64>,
    gammas: Vec<f64>,
}

impl AnnealSchedule {
    /// Default trotterised schedule: for `m = 1..=p`, `beta_m = 1 − m/p` and
    /// `gamma_m = m/p`. At `p = 5` this gives betas `[0.8, 0.6, 0.4, 0.2, 0.0]`
    /// and gammas `[0.2, 0.4, 0.6, 0.8, 1.0]`.
    pub fn trotterized(p: usize) -> Result<Self> {
        Self::trotterized_scaled(p, 1.0)
    }

    /// Trotterised schedule with every phase angle multiplied by `scale`,
    /// the experimentation knob for problems whose raw coefficients wrap the
    /// cost phase.
    pub fn trotterized_scaled(p: usize, scale: f64) -> Result<Self> {
        if p == 0 {
            return Err(SimError::MalformedSchedule);
        }
        let pf = p as f64;
        let betas = (1..=p).map(|m| 1.0 - m as f64 / pf).collect();
        let gammas = (1..=p).map(|m| scale * m as f64 / pf).collect();
        Ok(Self { betas, gammas })
    }

    pub fn custom(betas: Vec<f64>, gammas: Vec<f64>) -> Result<Self> {
        if betas.is_empty() || betas.len() != gammas.len() {
            return Err(SimError::MalformedSchedule);
        }
        Ok(Self { betas, gammas })
    }

    /// Layer count `p`.
    pub fn p(&self) -> usize {
        self.betas.len()
    }

    pub fn betas(&self) -> &[f64] {
        &self.betas
    }

    pub fn gammas(&self) -> &[f64] {
        &self.gammas
    }

    /// `(beta, gamma)` of 1-based layer `m`.
    pub fn layer(&self, m: usize) -> (f64, f64) {
        (self.betas[m - 1], self.gammas[m - 1])
    }
}
