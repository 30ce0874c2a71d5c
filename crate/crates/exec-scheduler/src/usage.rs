use crate::{Result, SchedError};

/// Which sweeps the closed-form QPU-usage figure counts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QpuAccounting {
    /// Expectation sweeps only: `p · ceil(n/k) · service`. With k = 5, p = 5
    /// and 3 s service this reproduces the 3·n-seconds figure.
    SweepsOnly,
    /// Expectation sweeps plus the final sampling sweep:
    /// `(p + 1) · ceil(n/k) · service`.
    SweepsPlusFinal,
}

/// Closed-form modelled QPU seconds for a decomposed run of `n` variables in
/// subsets of `k` over `p` layers.
pub fn qpu_usage_model(
    n: usize,
    k: usize,
    p: usize,
    service_time_s: f64,
    accounting: QpuAccounting,
) -> Result<f64> {
    if n == 0 || k == 0 || p == 0 || service_time_s < 0.0 {
        return Err(SchedError::InvalidUsageInputs);
    }
    let circuits = n.div_ceil(k) as f64;
    let sweeps = match accounting {
        QpuAccounting::SweepsOnly => p as f64 * circuits,
        QpuAccounting::SweepsPlusFinal => p as f64 * circuits + circuits,
    };
    Ok(sweeps * service_time_s)
}
