//! Exact mean costs of "Count" on uniformly random permutations of distinct
//! keys, plus the asymptotic constants of the variance/covariance expansion.
//!
//! All finite-`n` formulas are evaluated in exact rational arithmetic. For
//! `n < 4` the closed forms do not apply and tabulated values are returned;
//! these agree with exhaustive enumeration over all permutations.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::decimal::Decimal;
use crate::error::{require_at_least, Result};

/// Arbitrary-precision rational, always normalized (lowest terms, positive
/// denominator).
pub type Rational = BigRational;

/// `num / den` as a [`Rational`].
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// Nearest `f64` (within a few ulps) to an exact value.
pub fn to_f64(r: &Rational) -> f64 {
    num_traits::ToPrimitive::to_f64(r).unwrap_or(f64::NAN)
}

/// `(sum 1/k, sum (-1)^k/k, prod k)` over `lo <= k < hi` as unreduced
/// numerators over a common denominator, by binary splitting.
fn split_sums(lo: u64, hi: u64) -> (BigInt, BigInt, BigInt) {
    if hi - lo == 1 {
        let sign = if lo.is_multiple_of(2) { 1 } else { -1 };
        return (BigInt::one(), BigInt::from(sign), BigInt::from(lo));
    }
    let mid = lo + (hi - lo) / 2;
    let (h1, a1, d1) = split_sums(lo, mid);
    let (h2, a2, d2) = split_sums(mid, hi);
    (&h1 * &d2 + &h2 * &d1, &a1 * &d2 + &a2 * &d1, d1 * d2)
}

/// `(H_n, H_n^alt)`, reduced once at the end.
pub fn harmonic_pair(n: u64) -> (Rational, Rational) {
    if n == 0 {
        return (Rational::zero(), Rational::zero());
    }
    let (h, a, d) = split_sums(1, n + 1);
    (Rational::new(h, d.clone()), Rational::new(a, d))
}

/// `H_n = sum_{k=1}^n 1/k`, with `H_0 = 0`.
pub fn harmonic(n: u64) -> Rational {
    harmonic_pair(n).0
}

/// `H_n^alt = sum_{k=1}^n (-1)^k / k`, with `H_0^alt = 0`.
pub fn harmonic_alt(n: u64) -> Rational {
    harmonic_pair(n).1
}

/// Both harmonic numbers for every `0 <= k <= n` in one pass.
pub fn harmonic_table(n: u64) -> Vec<(Rational, Rational)> {
    let mut out = Vec::with_capacity(n as usize + 1);
    let (mut h, mut h_alt) = (Rational::zero(), Rational::zero());
    out.push((h.clone(), h_alt.clone()));
    for k in 1..=n {
        let term = ratio(1, k as i64);
        h += &term;
        if k % 2 == 0 {
            h_alt += term;
        } else {
            h_alt -= term;
        }
        out.push((h.clone(), h_alt.clone()));
    }
    out
}

/// Parity terms shared by both mean formulas:
/// `-[n even]/320 (1/(n-3) + 3/(n-1)) + [n odd]/320 (3/(n-2) + 1/n)`.
fn parity_correction(n: i64) -> Rational {
    if n % 2 == 0 {
        -(ratio(1, n - 3) + ratio(3, n - 1)) / int(320)
    } else {
        (ratio(3, n - 2) + ratio(1, n)) / int(320)
    }
}

fn sign_power(n: u64) -> i64 {
    if n.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

fn comparisons_from(n: u64, h: &Rational, h_alt: &Rational) -> Rational {
    match n {
        0 | 1 => Rational::zero(),
        2 => int(1),
        3 => ratio(8, 3),
        _ => {
            let nn = int(n as i64);
            ratio(9, 5) * &nn * h - ratio(1, 5) * &nn * h_alt - ratio(89, 25) * &nn
                + ratio(67, 40) * h
                - ratio(3, 40) * h_alt
                - ratio(83, 800)
                + ratio(sign_power(n), 10)
                + parity_correction(n as i64)
        }
    }
}

fn swaps_from(n: u64, h: &Rational, h_alt: &Rational) -> Rational {
    match n {
        0 | 1 => Rational::zero(),
        2 => int(2),
        3 => ratio(8, 3),
        _ => {
            let nn = int(n as i64);
            ratio(3, 4) * &nn * h + ratio(1, 20) * &nn * h_alt - ratio(4, 5) * &nn
                + ratio(3, 4) * h
                + ratio(1, 20) * h_alt
                - ratio(23, 160)
                - ratio(sign_power(n), 40)
                + parity_correction(n as i64)
        }
    }
}

/// Expected number of key comparisons `E[C_n]`.
pub fn mean_comparisons(n: u64) -> Rational {
    let (h, h_alt) = harmonic_pair(n);
    comparisons_from(n, &h, &h_alt)
}

/// Expected weighted number of swaps `E[S_n]`, in swap units (a rotation
/// counts 3/2).
pub fn mean_swaps(n: u64) -> Rational {
    let (h, h_alt) = harmonic_pair(n);
    swaps_from(n, &h, &h_alt)
}

/// `(E[C_k], E[S_k])` for all `0 <= k <= n`, sharing the harmonic sums.
pub fn mean_table(n: u64) -> Vec<(Rational, Rational)> {
    harmonic_table(n)
        .iter()
        .enumerate()
        .map(|(k, (h, h_alt))| {
            (
                comparisons_from(k as u64, h, h_alt),
                swaps_from(k as u64, h, h_alt),
            )
        })
        .collect()
}

/// `n - [n even]`, the denominator used by the first-stage means.
fn odd_floor(n: u64) -> i64 {
    (n - u64::from(n.is_multiple_of(2))) as i64
}

/// Expected weighted swaps of the first partitioning stage,
/// `5n/8 + 13/16 - 1/(16 (n - [n even]))`.
pub fn mean_partition_swaps(n: u64) -> Result<Rational> {
    require_at_least("mean_partition_swaps", 2, n as usize)?;
    Ok(ratio(5 * n as i64, 8) + ratio(13, 16) - ratio(1, 16 * odd_floor(n)))
}

/// Expected number of small elements compared to the larger pivot first in
/// the first stage, `n/12 - 7/24 + 1/(8 (n - [n even]))`. Equals
/// `E[L+ - M+]`.
pub fn mean_splus(n: u64) -> Result<Rational> {
    require_at_least("mean_splus", 2, n as usize)?;
    Ok(ratio(n as i64, 12) - ratio(7, 24) + ratio(1, 8 * odd_floor(n)))
}

/// Expected size of each of the three sublists after the first stage,
/// `(n - 2) / 3`.
pub fn mean_sublist_size(n: u64) -> Result<Rational> {
    require_at_least("mean_sublist_size", 2, n as usize)?;
    Ok(ratio(n as i64 - 2, 3))
}

/// High-precision analysis constants.
#[derive(Clone, Debug)]
pub struct AnalysisConstants {
    pub pi: Decimal,
    pub ln2: Decimal,
    pub gamma: Decimal,
    /// Linear coefficient of `E[C_n]`: `9/5 gamma + 1/5 ln 2 - 89/25`.
    pub a_c: Decimal,
    /// Linear coefficient of `E[S_n]`: `3/4 gamma - 1/20 ln 2 - 4/5`.
    pub a_s: Decimal,
    pub sigma2_c: Decimal,
    pub sigma2_s: Decimal,
    pub sigma2_cs: Decimal,
    pub corr_limit: Decimal,
}

/// Bernoulli numbers `B_0..=B_m` (convention `B_1 = -1/2`).
fn bernoulli(m: usize) -> Vec<Rational> {
    let mut b: Vec<Rational> = Vec::with_capacity(m + 1);
    b.push(Rational::one());
    for j in 1..=m {
        // sum_{k<j} C(j+1, k) B_k + (j+1) B_j = 0
        let mut binom = BigInt::one();
        let mut acc = Rational::zero();
        for (k, bk) in b.iter().enumerate() {
            acc += Rational::from_integer(binom.clone()) * bk;
            binom = binom * BigInt::from(j + 1 - k) / BigInt::from(k + 1);
        }
        b.push(-acc / int(j as i64 + 1));
    }
    b
}

/// `pi = 16 atan(1/5) - 4 atan(1/239)`.
pub fn pi() -> Decimal {
    Decimal::from_int(16) * Decimal::atan_inv(5) - Decimal::from_int(4) * Decimal::atan_inv(239)
}

/// `ln 2 = 2 atanh(1/3)`.
pub fn ln2() -> Decimal {
    Decimal::from_int(2) * Decimal::atanh_inv(3)
}

/// Euler-Mascheroni constant by Euler-Maclaurin summation at `N = 100`:
/// `gamma = H_N - ln N - 1/(2N) + sum_k B_2k / (2k N^2k)`. Ten correction
/// terms leave an error below `1e-42`.
pub fn euler_gamma() -> Decimal {
    const N: i64 = 100;
    // ln 100 = 6 ln 2 + 2 ln(5/4), ln(5/4) = 2 atanh(1/9)
    let ln_n = Decimal::from_int(6) * ln2() + Decimal::from_int(4) * Decimal::atanh_inv(9);
    let b = bernoulli(20);
    let mut tail = Rational::zero();
    let mut n_pow = int(1);
    for k in 1..=10usize {
        n_pow *= int(N * N);
        tail += &b[2 * k] / (int(2 * k as i64) * &n_pow);
    }
    let rational_part = harmonic(N as u64) - ratio(1, 2 * N) + tail;
    Decimal::from_rational(&rational_part) - ln_n
}

impl AnalysisConstants {
    pub fn compute() -> Self {
        let pi = pi();
        let ln2 = ln2();
        let gamma = euler_gamma();
        let pi2 = pi.clone() * pi.clone();
        let combo = |c: Rational, p: Rational, l: Rational| {
            Decimal::from_rational(&c) + pi2.clone() * &p + ln2.clone() * &l
        };
        let sigma2_c = combo(ratio(1609, 300), ratio(-27, 50), ratio(3, 10));
        let sigma2_s = combo(ratio(47, 48), ratio(-3, 32), ratio(3, 32));
        let sigma2_cs = combo(ratio(43, 20), ratio(-9, 40), ratio(7, 40));
        let corr_limit = sigma2_cs.clone() / (sigma2_c.clone() * sigma2_s.clone()).sqrt();
        let a_c =
            gamma.clone() * &ratio(9, 5) + ln2.clone() * &ratio(1, 5) - Decimal::from_ratio(89, 25);
        let a_s =
            gamma.clone() * &ratio(3, 4) - ln2.clone() * &ratio(1, 20) - Decimal::from_ratio(4, 5);
        AnalysisConstants {
            pi,
            ln2,
            gamma,
            a_c,
            a_s,
            sigma2_c,
            sigma2_s,
            sigma2_cs,
            corr_limit,
        }
    }
}

/// Double-precision copies of the constants, for floating-point callers.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Constants64 {
    pub a_c: f64,
    pub a_s: f64,
    pub sigma2_c: f64,
    pub sigma2_s: f64,
    pub sigma2_cs: f64,
    pub corr_limit: f64,
}

impl From<&AnalysisConstants> for Constants64 {
    fn from(c: &AnalysisConstants) -> Self {
        Constants64 {
            a_c: c.a_c.to_f64(),
            a_s: c.a_s.to_f64(),
            sigma2_c: c.sigma2_c.to_f64(),
            sigma2_s: c.sigma2_s.to_f64(),
            sigma2_cs: c.sigma2_cs.to_f64(),
            corr_limit: c.corr_limit.to_f64(),
        }
    }
}

impl Constants64 {
    pub fn compute() -> Self {
        Constants64::from(&AnalysisConstants::compute())
    }
}

/// `9/5 n ln n + A_c n + 67/40 ln n`.
pub fn mean_comparisons_asymptotic(n: u64, a_c: f64) -> f64 {
    let x = n as f64;
    let ln = libm::log(x);
    1.8 * x * ln + a_c * x + 67.0 / 40.0 * ln
}

/// `3/4 n ln n + A_s n + 3/4 ln n`.
pub fn mean_swaps_asymptotic(n: u64, a_s: f64) -> f64 {
    let x = n as f64;
    let ln = libm::log(x);
    0.75 * x * ln + a_s * x + 0.75 * ln
}
