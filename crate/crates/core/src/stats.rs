//! Small descriptive statistics over `f64` samples.

use alloc::vec::Vec;

pub fn mean(xs: &[f64]) -> f64 {
    xs.iter().sum::<f64>() / xs.len() as f64
}

/// Unbiased sample variance (two-pass).
pub fn variance(xs: &[f64]) -> f64 {
    let m = mean(xs);
    xs.iter().map(|x| (x - m) * (x - m)).sum::<f64>() / (xs.len() as f64 - 1.0)
}

/// Unbiased moments of a bivariate sample.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PairMoments {
    pub n: usize,
    pub mean_x: f64,
    pub mean_y: f64,
    pub var_x: f64,
    pub var_y: f64,
    pub cov: f64,
}

impl PairMoments {
    /// Two-pass computation; needs at least two pairs.
    pub fn compute(pairs: &[(f64, f64)]) -> Self {
        let n = pairs.len();
        let nf = n as f64;
        let mean_x = pairs.iter().map(|p| p.0).sum::<f64>() / nf;
        let mean_y = pairs.iter().map(|p| p.1).sum::<f64>() / nf;
        let (mut sxx, mut syy, mut sxy) = (0.0, 0.0, 0.0);
        for &(x, y) in pairs {
            let (dx, dy) = (x - mean_x, y - mean_y);
            sxx += dx * dx;
            syy += dy * dy;
            sxy += dx * dy;
        }
        let d = nf - 1.0;
        PairMoments {
            n,
            mean_x,
            mean_y,
            var_x: sxx / d,
            var_y: syy / d,
            cov: sxy / d,
        }
    }

    /// Pearson correlation; `None` when either variance vanishes.
    pub fn corr(&self) -> Option<f64> {
        if self.var_x > 0.0 && self.var_y > 0.0 {
            Some(self.cov / libm::sqrt(self.var_x * self.var_y))
        } else {
            None
        }
    }
}

/// Two-sample Kolmogorov–Smirnov distance `sup_t |F_a(t) - F_b(t)|`.
///
/// # Panics
///
/// If either sample is empty or contains NaN.
pub fn ks_two_sample(a: &[f64], b: &[f64]) -> f64 {
    assert!(!a.is_empty() && !b.is_empty(), "empty sample");
    let sorted = |xs: &[f64]| {
        let mut v: Vec<f64> = xs.to_vec();
        v.sort_by(|x, y| x.partial_cmp(y).expect("NaN in sample"));
        v
    };
    let (a, b) = (sorted(a), sorted(b));
    let (na, nb) = (a.len() as f64, b.len() as f64);
    let (mut i, mut j) = (0, 0);
    let mut d: f64 = 0.0;
    while i < a.len() && j < b.len() {
        let t = if a[i] <= b[j] { a[i] } else { b[j] };
        while i < a.len() && a[i] <= t {
            i += 1;
        }
        while j < b.len() && b[j] <= t {
            j += 1;
        }
        d = d.max(libm::fabs(i as f64 / na - j as f64 / nb));
    }
    d
}
