//! Limit law of the normalized comparison and swap counts.
//!
//! The pair `X = (X_c, X_s)` is the unique centered, square-integrable
//! solution of
//!
//! ```text
//! X  =d  D1 X' + D2 X'' + D3 X''' + b(D1, D2, D3)
//! ```
//!
//! where `(D1, D2, D3)` are the spacings of two independent uniforms on
//! `[0, 1]`, the copies of `X` are independent, and `b` is the toll vector
//! built by [`toll`]. Since `E[D1² + D2² + D3²] = 1/2`, taking second
//! moments gives `Cov(X) = 2 E[b bᵀ]`, which [`toll_second_moments`]
//! evaluates by deterministic quadrature.

use alloc::vec::Vec;

use rand::Rng;

use crate::cost::CostProfile;
use crate::count::partition_count;
use crate::error::{Error, Result};
use crate::perm::random_permutation;
use crate::rng::{sample_rng, SampleRng};
use crate::stats::PairMoments;

/// The three gaps cut into `[0, 1]` by two points.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Spacings {
    pub d1: f64,
    pub d2: f64,
    pub d3: f64,
}

impl Spacings {
    /// `(min(u1,u2), |u1-u2|, 1-max(u1,u2))`.
    pub fn from_uniforms(u1: f64, u2: f64) -> Self {
        let (lo, hi) = if u1 <= u2 { (u1, u2) } else { (u2, u1) };
        Spacings {
            d1: lo,
            d2: hi - lo,
            d3: 1.0 - hi,
        }
    }

    pub fn sample<R: Rng + ?Sized>(rng: &mut R) -> Self {
        let u1: f64 = rng.random();
        let u2: f64 = rng.random();
        Self::from_uniforms(u1, u2)
    }

    pub fn as_array(&self) -> [f64; 3] {
        [self.d1, self.d2, self.d3]
    }
}

/// Per-level additive cost `(b1, b2)` of the fixed-point equation.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TollVector {
    pub b1: f64,
    pub b2: f64,
}

/// One draw of `(X_c, X_s)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LimitSample {
    pub x_c: f64,
    pub x_s: f64,
}

/// `x ln x` with `0 ln 0 = 0`.
fn xlogx(x: f64) -> f64 {
    if x > 0.0 {
        x * libm::log(x)
    } else {
        0.0
    }
}

fn toll_with_indicator(sp: &Spacings, larger_right: f64) -> TollVector {
    let Spacings { d1, d2, d3 } = *sp;
    let entropy = xlogx(d1) + xlogx(d2) + xlogx(d3);
    TollVector {
        b1: 1.0 + d2 + d1.min(d3) + 1.8 * entropy,
        b2: d1 + d3 + larger_right * (0.5 * d1 + d2 - d3) + 0.75 * entropy,
    }
}

/// ```text
/// b1 = 1 + d2 + min(d1, d3) + 9/5 Σ d_r ln d_r
/// b2 = d1 + d3 + [d3 > d1] (d1/2 + d2 - d3) + 3/4 Σ d_r ln d_r
/// ```
///
/// The indicator is strict, so `d1 == d3` takes it as zero.
pub fn toll(sp: &Spacings) -> TollVector {
    toll_with_indicator(sp, if sp.d3 > sp.d1 { 1.0 } else { 0.0 })
}

/// First and second moments of the toll vector under the spacings law.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TollMoments {
    pub resolution: usize,
    pub mean_b1: f64,
    pub mean_b2: f64,
    pub e_b1b1: f64,
    pub e_b1b2: f64,
    pub e_b2b2: f64,
}

impl TollMoments {
    /// Limit variance of `X_c`, `2 E[b1²]`.
    pub fn sigma2_c(&self) -> f64 {
        2.0 * self.e_b1b1
    }

    pub fn sigma2_s(&self) -> f64 {
        2.0 * self.e_b2b2
    }

    pub fn sigma2_cs(&self) -> f64 {
        2.0 * self.e_b1b2
    }

    pub fn corr(&self) -> f64 {
        self.e_b1b2 / libm::sqrt(self.e_b1b1 * self.e_b2b2)
    }
}

/// Midpoint rule on a `resolution × resolution` grid over `(u1, u2)`.
///
/// The integrand is symmetric in `(u1, u2)`, so only the upper triangle and
/// the diagonal are visited. Cells with `i + j = resolution - 1` are bisected
/// by the line `d1 = d3` where the swap toll jumps; their centers lie on the
/// line, and they are given the average of both one-sided values. With that
/// the error decays like `resolution⁻²`.
///
/// # Errors
///
/// `resolution` below 1000.
pub fn toll_second_moments(resolution: usize) -> Result<TollMoments> {
    if resolution < 1000 {
        return Err(Error::InvalidParameter(
            "quadrature resolution must be at least 1000",
        ));
    }
    Ok(toll_moments_unchecked(resolution))
}

pub(crate) fn toll_moments_unchecked(resolution: usize) -> TollMoments {
    let h = 1.0 / resolution as f64;
    let mut acc = [0.0f64; 5];
    let mut add = |w: f64, t: TollVector| {
        acc[0] += w * t.b1;
        acc[1] += w * t.b2;
        acc[2] += w * t.b1 * t.b1;
        acc[3] += w * t.b1 * t.b2;
        acc[4] += w * t.b2 * t.b2;
    };
    for i in 0..resolution {
        let u1 = (i as f64 + 0.5) * h;
        for j in i..resolution {
            let u2 = (j as f64 + 0.5) * h;
            let w = if i == j { 1.0 } else { 2.0 };
            let sp = Spacings::from_uniforms(u1, u2);
            if i + j == resolution - 1 {
                add(0.5 * w, toll_with_indicator(&sp, 0.0));
                add(0.5 * w, toll_with_indicator(&sp, 1.0));
            } else {
                add(w, toll(&sp));
            }
        }
    }
    let cell = h * h;
    TollMoments {
        resolution,
        mean_b1: acc[0] * cell,
        mean_b2: acc[1] * cell,
        e_b1b1: acc[2] * cell,
        e_b1b2: acc[3] * cell,
        e_b2b2: acc[4] * cell,
    }
}

/// Hard cap on the walk below the root when pruning is active.
pub const MAX_WALK_DEPTH: u32 = 64;

/// Evaluates the fixed-point tree down to `depth` levels. A node whose
/// accumulated scale is below `prune_eps`, or which lies below the depth
/// limit, contributes zero.
///
/// With `prune_eps > 0` the walk itself continues to the pruning threshold
/// (at most [`MAX_WALK_DEPTH`] levels) whatever `depth` is, so two calls that
/// differ only in `depth` consume identical random draws and differ only by
/// the truncated contribution. With `prune_eps == 0` the walk stops at
/// `depth`.
///
/// # Panics
///
/// If `depth == 0` or `prune_eps` is outside `[0, 1)`.
pub fn sample_limit<R: Rng + ?Sized>(rng: &mut R, depth: u32, prune_eps: f64) -> LimitSample {
    assert!(depth >= 1, "depth must be positive");
    assert!(
        (0.0..1.0).contains(&prune_eps),
        "prune_eps must lie in [0, 1)"
    );
    let walk = if prune_eps > 0.0 {
        depth.max(MAX_WALK_DEPTH)
    } else {
        depth
    };
    let (x_c, x_s) = descend(rng, depth, walk, 1.0, prune_eps);
    LimitSample { x_c, x_s }
}

fn descend<R: Rng + ?Sized>(
    rng: &mut R,
    depth: u32,
    walk: u32,
    scale: f64,
    eps: f64,
) -> (f64, f64) {
    if walk == 0 || scale < eps {
        return (0.0, 0.0);
    }
    let sp = Spacings::sample(rng);
    let b = toll(&sp);
    let (mut x_c, mut x_s) = (b.b1, b.b2);
    for d in sp.as_array() {
        let (c, s) = descend(rng, depth.saturating_sub(1), walk - 1, scale * d, eps);
        x_c += d * c;
        x_s += d * s;
    }
    if depth == 0 {
        (0.0, 0.0)
    } else {
        (x_c, x_s)
    }
}

/// Reproducible sampler: draw `k` comes from stream `k` of `seed`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LimitSampler {
    pub seed: u64,
    pub depth: u32,
    pub prune_eps: f64,
}

impl LimitSampler {
    pub const DEFAULT_DEPTH: u32 = 25;
    pub const DEFAULT_PRUNE_EPS: f64 = 1e-4;

    pub fn new(seed: u64) -> Self {
        LimitSampler {
            seed,
            depth: Self::DEFAULT_DEPTH,
            prune_eps: Self::DEFAULT_PRUNE_EPS,
        }
    }

    pub fn sample(&self, index: u64) -> LimitSample {
        let mut rng: SampleRng = sample_rng(self.seed, index);
        sample_limit(&mut rng, self.depth, self.prune_eps)
    }

    pub fn samples(&self, range: core::ops::Range<u64>) -> Vec<LimitSample> {
        range.map(|k| self.sample(k)).collect()
    }
}

/// Number of batches used for the batch-means standard errors.
pub const BATCHES: usize = 20;

/// Moment estimates with standard errors.
///
/// Standard errors of the means use the sample standard deviation. Those of
/// the second-order quantities come from [`BATCHES`] equal batches: the
/// spread of the per-batch estimates divided by `sqrt(BATCHES)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MomentEstimate {
    pub samples: usize,
    pub mean_c: f64,
    pub mean_s: f64,
    pub mean_c_stderr: f64,
    pub mean_s_stderr: f64,
    pub var_c: f64,
    pub var_s: f64,
    pub cov: f64,
    /// `None` when a variance is zero.
    pub corr: Option<f64>,
    pub var_c_stderr: f64,
    pub var_s_stderr: f64,
    pub cov_stderr: f64,
    pub corr_stderr: Option<f64>,
}

/// Minimum sample count accepted by [`estimate_moments`].
pub const MIN_MOMENT_SAMPLES: usize = 1000;

/// Estimates from limit-law draws; needs at least [`MIN_MOMENT_SAMPLES`].
pub fn estimate_moments(samples: &[LimitSample]) -> Result<MomentEstimate> {
    let pairs: Vec<(f64, f64)> = samples.iter().map(|s| (s.x_c, s.x_s)).collect();
    estimate_pair_moments(&pairs, MIN_MOMENT_SAMPLES)
}

/// Same estimates for arbitrary pairs, with a caller-chosen minimum (never
/// below `2 * BATCHES`).
pub fn estimate_pair_moments(pairs: &[(f64, f64)], min: usize) -> Result<MomentEstimate> {
    let min = min.max(2 * BATCHES);
    if pairs.len() < min {
        return Err(Error::TooFewSamples {
            min,
            got: pairs.len(),
        });
    }
    let all = PairMoments::compute(pairs);
    let n = pairs.len() as f64;

    let batch_len = pairs.len() / BATCHES;
    let batches: Vec<PairMoments> = pairs
        .chunks_exact(batch_len)
        .take(BATCHES)
        .map(PairMoments::compute)
        .collect();
    let spread = |f: &dyn Fn(&PairMoments) -> f64| {
        let vals: Vec<f64> = batches.iter().map(f).collect();
        libm::sqrt(crate::stats::variance(&vals) / BATCHES as f64)
    };
    let corr_stderr = if batches.iter().all(|b| b.corr().is_some()) {
        Some(spread(&|b| b.corr().unwrap_or(0.0)))
    } else {
        None
    };

    Ok(MomentEstimate {
        samples: pairs.len(),
        mean_c: all.mean_x,
        mean_s: all.mean_y,
        mean_c_stderr: libm::sqrt(all.var_x / n),
        mean_s_stderr: libm::sqrt(all.var_y / n),
        var_c: all.var_x,
        var_s: all.var_y,
        cov: all.cov,
        corr: all.corr(),
        var_c_stderr: spread(&|b| b.var_x),
        var_s_stderr: spread(&|b| b.var_y),
        cov_stderr: spread(&|b| b.cov),
        corr_stderr,
    })
}

/// One row of the first-stage convergence diagnostic.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SplitDiagnostic {
    pub n: usize,
    pub samples: usize,
    /// `E[(S+/n - [I3 > I1] I1/n)²]`
    pub mse_s: f64,
    /// `E[(M+/n - [I3 > I1] I2/n)²]`
    pub mse_m: f64,
    /// `E[(L+/n - [I3 > I1] I3/n)²]`
    pub mse_l: f64,
    /// Fraction of runs with `I3 > I1`.
    pub frac_right_heavy: f64,
}

/// Mean squared distance between the `q`-first tallies of one partitioning
/// stage and their limits, which are all-or-nothing according to whether
/// large elements outnumber small ones.
///
/// Sample `k` for size `n` uses stream `k` of `seed ^ n`.
///
/// # Errors
///
/// Any `n < 10`.
pub fn split_diagnostic(
    n_values: &[usize],
    samples_per_n: usize,
    seed: u64,
) -> Result<Vec<SplitDiagnostic>> {
    if let Some(&n) = n_values.iter().find(|&&n| n < 10) {
        return Err(Error::BelowMinimum {
            what: "split_diagnostic",
            min: 10,
            got: n,
        });
    }
    Ok(n_values
        .iter()
        .map(|&n| {
            let (mut ss, mut sm, mut sl, mut heavy) = (0.0, 0.0, 0.0, 0usize);
            let nf = n as f64;
            for k in 0..samples_per_n {
                let mut rng = sample_rng(seed ^ n as u64, k as u64);
                let mut a = random_permutation(n, &mut rng);
                let out = partition_count(&mut a, 0, n - 1, &mut CostProfile::new());
                let ind = if out.i3 > out.i1 {
                    heavy += 1;
                    1.0
                } else {
                    0.0
                };
                let sq = |tally: usize, size: usize| {
                    let e = (tally as f64 - ind * size as f64) / nf;
                    e * e
                };
                ss += sq(out.s_plus, out.i1);
                sm += sq(out.m_plus, out.i2);
                sl += sq(out.l_plus, out.i3);
            }
            let m = samples_per_n as f64;
            SplitDiagnostic {
                n,
                samples: samples_per_n,
                mse_s: ss / m,
                mse_m: sm / m,
                mse_l: sl / m,
                frac_right_heavy: heavy as f64 / m,
            }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spacings_of_equal_points() {
        let sp = Spacings::from_uniforms(0.5, 0.5);
        assert_eq!(sp.as_array(), [0.5, 0.0, 0.5]);
        let sp = Spacings::from_uniforms(0.75, 0.25);
        assert_eq!(sp.as_array(), [0.25, 0.5, 0.25]);
    }

    #[test]
    fn toll_at_thirds() {
        let t = 1.0 / 3.0;
        let b = toll(&Spacings {
            d1: t,
            d2: t,
            d3: t,
        });
        // direct evaluation; indicator off since d3 == d1
        let ln3 = libm::log(3.0);
        assert!((b.b1 - (1.0 + 2.0 / 3.0 - 1.8 * ln3)).abs() < 1e-14);
        assert!((b.b2 - (2.0 / 3.0 - 0.75 * ln3)).abs() < 1e-14);
        assert!((b.b1 + 0.310835).abs() < 1e-6);
        assert!((b.b2 + 0.157292).abs() < 1e-6);
    }

    #[test]
    fn toll_degenerate() {
        let b = toll(&Spacings {
            d1: 1.0,
            d2: 0.0,
            d3: 0.0,
        });
        assert_eq!((b.b1, b.b2), (1.0, 1.0));
        // right-heavy case exercises the indicator
        let b = toll(&Spacings {
            d1: 0.0,
            d2: 0.0,
            d3: 1.0,
        });
        assert_eq!((b.b1, b.b2), (1.0, 0.0));
    }

    #[test]
    fn depth_one_is_the_toll() {
        let mut a = sample_rng(11, 0);
        let mut b = sample_rng(11, 0);
        let x = sample_limit(&mut a, 1, 0.0);
        let t = toll(&Spacings::sample(&mut b));
        assert_eq!((x.x_c, x.x_s), (t.b1, t.b2));
    }

    #[test]
    fn sampler_is_deterministic() {
        let s = LimitSampler::new(42);
        assert_eq!(s.sample(5), s.sample(5));
        assert_ne!(s.sample(5), s.sample(6));
    }

    #[test]
    fn too_few_samples() {
        let xs = alloc::vec![LimitSample { x_c: 0.0, x_s: 0.0 }; 10];
        assert_eq!(
            estimate_moments(&xs),
            Err(Error::TooFewSamples { min: 1000, got: 10 })
        );
    }

    #[test]
    fn all_zero_samples() {
        let xs = alloc::vec![LimitSample { x_c: 0.0, x_s: 0.0 }; 1000];
        let m = estimate_moments(&xs).unwrap();
        assert_eq!((m.var_c, m.var_s, m.cov), (0.0, 0.0, 0.0));
        assert_eq!(m.corr, None);
        assert_eq!(m.corr_stderr, None);
    }

    #[test]
    fn quadrature_rejects_coarse_grid() {
        assert!(toll_second_moments(10).is_err());
    }

    #[test]
    fn split_diagnostic_rejects_small_n() {
        assert!(split_diagnostic(&[5], 10, 0).is_err());
    }
}
