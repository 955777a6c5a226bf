use crate::exec::{self, Execution};

/// One-sample Kolmogorov–Smirnov distance between the empirical CDF of
/// `sorted` and `cdf`.
pub fn ks_statistic<F>(sorted: &[f64], cdf: F, exec: Execution) -> f64
where
    F: Fn(f64) -> f64 + Send + Sync,
{
    let n = sorted.len() as f64;
    exec::max_by_index(sorted, exec, |i, x| {
        let f = cdf(x);
        (f - i as f64 / n).max((i + 1) as f64 / n - f)
    })
}

/// Empirical distribution of a simulation run and its distance to the
/// reference distribution.
#[derive(Debug, Clone, PartialEq)]
pub struct EcdfSummary {
    pub n: usize,
    pub sorted_samples: Vec<f64>,
    pub ks_distance: f64,
    pub seed: u64,
}

impl EcdfSummary {
    /// Sorts `samples` and compares them with `reference`.
    pub fn new<F>(mut samples: Vec<f64>, seed: u64, reference: F, exec: Execution) -> Self
    where
        F: Fn(f64) -> f64 + Send + Sync,
    {
        assert!(!samples.is_empty(), "an ECDF needs at least one sample");
        exec::sort_floats(&mut samples, exec);
        let ks_distance = ks_statistic(&samples, reference, exec);
        Self {
            n: samples.len(),
            sorted_samples: samples,
            ks_distance,
            seed,
        }
    }

    /// Fraction of samples `≤ x`.
    pub fn ecdf(&self, x: f64) -> f64 {
        self.sorted_samples.partition_point(|&s| s <= x) as f64 / self.n as f64
    }

    pub fn mean(&self) -> f64 {
        self.sorted_samples.iter().sum::<f64>() / self.n as f64
    }

    /// Empirical `q`-quantile, `q ∈ [0, 1]`.
    pub fn quantile(&self, q: f64) -> f64 {
        let idx = ((q.clamp(0.0, 1.0) * self.n as f64).ceil() as usize).clamp(1, self.n);
        self.sorted_samples[idx - 1]
    }
}
