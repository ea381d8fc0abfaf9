//! Seeded, worker-count-invariant Monte Carlo runs over random permutations.

use std::fmt;
use std::str::FromStr;

use dpqs_core::exact::{mean_comparisons, mean_swaps, to_f64, Constants64};
use dpqs_core::perm::random_permutation;
use dpqs_core::rde::{estimate_pair_moments, MomentEstimate};
use dpqs_core::rng::sample_rng;
use dpqs_core::{sort_classic, sort_count, CostProfile};
use rayon::prelude::*;

use crate::error::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Variant {
    Count,
    Classic,
}

impl Variant {
    pub fn name(self) -> &'static str {
        match self {
            Variant::Count => "count",
            Variant::Classic => "classic",
        }
    }

    pub fn sort(self, keys: &mut [u64]) -> CostProfile {
        match self {
            Variant::Count => sort_count(keys),
            Variant::Classic => sort_classic(keys),
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Variant {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "count" => Ok(Variant::Count),
            "classic" => Ok(Variant::Classic),
            other => Err(format!(
                "unknown variant `{other}` (expected count or classic)"
            )),
        }
    }
}

/// Costs of one sorted permutation, with its normalized coordinates.
///
/// `norm_c = (comparisons - E[C_n]) / n` and `norm_s = (half_swaps/2 - E[S_n]) / n`.
/// The centering uses the exact means for "Count" and the empirical means
/// of the run for the classic baseline.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RunRecord {
    pub variant: Variant,
    pub n: usize,
    pub sample_index: u64,
    pub comparisons: u64,
    pub half_swaps: u64,
    pub norm_c: f64,
    pub norm_s: f64,
}

/// Settings shared by the sampling subcommands.
#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentConfig {
    pub n: usize,
    pub samples: usize,
    pub seed: u64,
    pub workers: usize,
    pub variants: Vec<Variant>,
}

impl ExperimentConfig {
    pub const MIN_N: usize = 100;
    pub const MIN_SAMPLES: usize = 100;

    /// Checks the bounds required for a statistics report.
    pub fn validate_for_statistics(&self) -> Result<(), CliError> {
        if self.n < Self::MIN_N {
            return Err(CliError::Usage(format!(
                "n must be at least {}",
                Self::MIN_N
            )));
        }
        if self.samples < Self::MIN_SAMPLES {
            return Err(CliError::Usage(format!(
                "samples must be at least {}",
                Self::MIN_SAMPLES
            )));
        }
        self.validate_basic()
    }

    pub fn validate_basic(&self) -> Result<(), CliError> {
        if self.n == 0 || self.samples == 0 || self.workers == 0 {
            return Err(CliError::Usage(
                "n, samples and workers must be positive".into(),
            ));
        }
        if self.variants.is_empty() {
            return Err(CliError::Usage("no variant selected".into()));
        }
        Ok(())
    }
}

/// Runs `f` on a pool of `workers` threads.
pub fn with_workers<T: Send>(workers: usize, f: impl FnOnce() -> T + Send) -> T {
    match rayon::ThreadPoolBuilder::new().num_threads(workers).build() {
        Ok(pool) => pool.install(f),
        Err(_) => f(),
    }
}

/// Sorts `samples` random permutations of size `n`. Sample `k` sorts the
/// permutation drawn from stream `k` of `seed`, so both variants see the same
/// inputs and the output does not depend on `workers`.
pub fn raw_costs(
    variant: Variant,
    n: usize,
    samples: usize,
    seed: u64,
    workers: usize,
) -> Vec<CostProfile> {
    with_workers(workers, || {
        (0..samples as u64)
            .into_par_iter()
            .map(|k| {
                let mut keys = random_permutation(n, &mut sample_rng(seed, k));
                variant.sort(&mut keys)
            })
            .collect()
    })
}

/// Exact `(E[C_n], E[S_n])` as floats.
pub fn exact_means(n: usize) -> (f64, f64) {
    (
        to_f64(&mean_comparisons(n as u64)),
        to_f64(&mean_swaps(n as u64)),
    )
}

/// Normalized records for one variant.
pub fn run_records(
    variant: Variant,
    n: usize,
    samples: usize,
    seed: u64,
    workers: usize,
) -> Vec<RunRecord> {
    let costs = raw_costs(variant, n, samples, seed, workers);
    let (mean_c, mean_s) = match variant {
        Variant::Count => exact_means(n),
        Variant::Classic => {
            let m = costs.len() as f64;
            (
                costs.iter().map(|p| p.comparisons as f64).sum::<f64>() / m,
                costs.iter().map(|p| p.swaps()).sum::<f64>() / m,
            )
        }
    };
    let nf = n as f64;
    costs
        .iter()
        .enumerate()
        .map(|(k, p)| RunRecord {
            variant,
            n,
            sample_index: k as u64,
            comparisons: p.comparisons,
            half_swaps: p.half_swaps(),
            norm_c: (p.comparisons as f64 - mean_c) / nf,
            norm_s: (p.swaps() - mean_s) / nf,
        })
        .collect()
}

/// Summary statistics of one variant.
#[derive(Clone, Debug, PartialEq)]
pub struct VariantSummary {
    pub variant: Variant,
    pub n: usize,
    pub samples: usize,
    pub mean_comparisons: f64,
    /// Swap units.
    pub mean_swaps: f64,
    /// Moments of `(C/n, S/n)`, so variances are `Var/n²`.
    pub scaled: MomentEstimate,
    /// "Count" only: exact means and the normalized deviation of the
    /// empirical means from them.
    pub exact_mean_comparisons: Option<f64>,
    pub exact_mean_swaps: Option<f64>,
}

impl VariantSummary {
    pub fn from_records(records: &[RunRecord]) -> Result<Self, CliError> {
        let first = records
            .first()
            .ok_or_else(|| CliError::Usage("no samples".into()))?;
        let n = first.n as f64;
        let pairs: Vec<(f64, f64)> = records
            .iter()
            .map(|r| (r.comparisons as f64 / n, r.half_swaps as f64 / 2.0 / n))
            .collect();
        let scaled = estimate_pair_moments(&pairs, ExperimentConfig::MIN_SAMPLES)
            .map_err(|e| CliError::Usage(e.to_string()))?;
        let exact = (first.variant == Variant::Count).then(|| exact_means(first.n));
        Ok(VariantSummary {
            variant: first.variant,
            n: first.n,
            samples: records.len(),
            mean_comparisons: scaled.mean_c * n,
            mean_swaps: scaled.mean_s * n,
            scaled,
            exact_mean_comparisons: exact.map(|e| e.0),
            exact_mean_swaps: exact.map(|e| e.1),
        })
    }
}

/// Statistics for every configured variant.
#[derive(Clone, Debug, PartialEq)]
pub struct MonteCarloReport {
    pub config: ExperimentConfig,
    pub summaries: Vec<VariantSummary>,
    pub constants: Constants64,
}

pub fn run_montecarlo(config: &ExperimentConfig) -> Result<MonteCarloReport, CliError> {
    config.validate_for_statistics()?;
    let summaries = config
        .variants
        .iter()
        .map(|&v| {
            let records = run_records(v, config.n, config.samples, config.seed, config.workers);
            VariantSummary::from_records(&records)
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(MonteCarloReport {
        config: config.clone(),
        summaries,
        constants: Constants64::compute(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn worker_count_does_not_matter() {
        let a = raw_costs(Variant::Count, 300, 40, 9, 1);
        let b = raw_costs(Variant::Count, 300, 40, 9, 3);
        assert_eq!(a, b);
    }

    #[test]
    fn count_records_use_exact_centering() {
        let recs = run_records(Variant::Count, 200, 5, 1, 1);
        let (ec, es) = exact_means(200);
        for r in &recs {
            assert!((r.norm_c - (r.comparisons as f64 - ec) / 200.0).abs() < 1e-12);
            assert!((r.norm_s - (r.half_swaps as f64 / 2.0 - es) / 200.0).abs() < 1e-12);
        }
    }

    #[test]
    fn classic_records_are_centered_empirically() {
        let recs = run_records(Variant::Classic, 200, 50, 1, 1);
        let mc: f64 = recs.iter().map(|r| r.norm_c).sum::<f64>();
        let ms: f64 = recs.iter().map(|r| r.norm_s).sum::<f64>();
        assert!(mc.abs() < 1e-9 && ms.abs() < 1e-9);
    }

    #[test]
    fn rejects_small_configs() {
        let cfg = ExperimentConfig {
            n: 10,
            samples: 1000,
            seed: 0,
            workers: 1,
            variants: vec![Variant::Count],
        };
        assert!(matches!(run_montecarlo(&cfg), Err(CliError::Usage(_))));
    }

    #[test]
    fn variant_names_round_trip() {
        for v in [Variant::Count, Variant::Classic] {
            assert_eq!(v.name().parse::<Variant>().unwrap(), v);
        }
        assert!("dual".parse::<Variant>().is_err());
    }
}
