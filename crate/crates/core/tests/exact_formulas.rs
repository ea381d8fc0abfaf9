use dpqs_core::exact::{
    self, harmonic, harmonic_alt, int, mean_comparisons, mean_comparisons_asymptotic,
    mean_partition_swaps, mean_splus, mean_swaps, mean_table, ratio, Constants64, Rational,
};
use dpqs_core::exhaustive::run_exhaustive_partition;
use dpqs_core::urn::first_stage_expectations_upto;
use num_traits::{ToPrimitive, Zero};

/// Checks `E_n = 6/(n(n-1)) sum_{k=0}^{n-2} (n-1-k) E_k + toll(n)` for
/// `from <= n <= means.len() - 1`, with running prefix sums.
fn check_recurrence(means: &[Rational], toll: impl Fn(usize) -> Rational, from: usize) {
    let (mut a, mut b) = (Rational::zero(), Rational::zero());
    for n in 2..means.len() {
        let k = n - 2;
        a += &means[k];
        b += &means[k] * int(k as i64);
        if n < from {
            continue;
        }
        let nn = n as i64;
        let rhs = ratio(6, nn * (nn - 1)) * (int(nn - 1) * &a - &b) + toll(n);
        assert_eq!(means[n], rhs, "recurrence fails at n = {n}");
    }
}

#[test]
fn swaps_satisfy_recurrence_up_to_400() {
    let means: Vec<Rational> = mean_table(400).into_iter().map(|(_, s)| s).collect();
    check_recurrence(&means, |n| mean_partition_swaps(n as u64).unwrap(), 4);
}

#[test]
fn comparisons_satisfy_recurrence_with_measured_tolls() {
    let means: Vec<Rational> = mean_table(10).into_iter().map(|(c, _)| c).collect();
    let measured: Vec<Rational> = (2..=10)
        .map(|n| run_exhaustive_partition(n).unwrap().mean_t_c)
        .collect();
    check_recurrence(&means, |n| measured[n - 2].clone(), 4);
}

#[test]
fn comparisons_satisfy_recurrence_with_urn_tolls() {
    const MAX: usize = 200;
    let means: Vec<Rational> = mean_table(MAX as u64).into_iter().map(|(c, _)| c).collect();
    let urn = first_stage_expectations_upto(MAX);
    let toll = |n: usize| {
        let e = &urn[n - 2];
        assert_eq!(e.n, n);
        let nn = n as i64;
        int(nn - 1) + ratio(2 * (nn - 2), 3) + &e.splus - &e.lplus
    };
    check_recurrence(&means, toll, 4);
}

#[test]
fn harmonic_asymptotics() {
    let c = exact::AnalysisConstants::compute();
    let gamma = c.gamma.to_f64();
    let ln2 = c.ln2.to_f64();
    for n in [10u64, 11, 50, 101, 500] {
        let h = harmonic(n).to_f64().unwrap();
        let h_alt = harmonic_alt(n).to_f64().unwrap();
        let nf = n as f64;
        assert!((h - nf.ln() - gamma).abs() < 1.0 / nf, "H_{n}");
        assert!((h_alt + ln2).abs() < 1.0 / nf, "H_{n}^alt");
    }
}

#[test]
fn expansion_gap_stays_bounded() {
    let c = Constants64::compute();
    // Running sums in f64 are accurate enough here; the gap is O(1).
    let (mut h, mut h_alt) = (0.0f64, 0.0f64);
    let mut worst: f64 = 0.0;
    let mut gaps = Vec::new();
    for n in 1..=1_000_000u64 {
        let x = n as f64;
        h += 1.0 / x;
        h_alt += if n % 2 == 0 { 1.0 / x } else { -1.0 / x };
        if n < 4 || !(n.is_power_of_two() || n % 99_991 == 0 || n == 1_000_000) {
            continue;
        }
        let parity = if n % 2 == 0 {
            -(1.0 / (x - 3.0) + 3.0 / (x - 1.0)) / 320.0
        } else {
            (3.0 / (x - 2.0) + 1.0 / x) / 320.0
        };
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        let mean = 1.8 * x * h - 0.2 * x * h_alt - 89.0 / 25.0 * x + 67.0 / 40.0 * h
            - 3.0 / 40.0 * h_alt
            - 83.0 / 800.0
            + sign / 10.0
            + parity;
        let gap = mean - mean_comparisons_asymptotic(n, c.a_c);
        worst = worst.max(gap.abs());
        gaps.push((n, gap));
    }
    // the float evaluation agrees with the exact one where both are cheap
    assert!(
        (mean_comparisons(64).to_f64().unwrap()
            - (gaps[4].1 + mean_comparisons_asymptotic(64, c.a_c)))
        .abs()
            < 1e-9
    );
    assert_eq!(gaps[4].0, 64);
    assert!(worst < 2.0, "gap {worst} not bounded: {gaps:?}");
}

#[test]
fn parity_terms_matter() {
    // Dropping the indicator corrections breaks the recurrence for both
    // parities; spot-check that consecutive sizes use different branches.
    for n in 4..40u64 {
        let c = mean_comparisons(n);
        let s = mean_swaps(n);
        assert!(c > int(0) && s > int(0));
        assert!(mean_comparisons(n + 1) > c);
    }
    assert_ne!(
        mean_splus(10).unwrap() - ratio(10, 12) + ratio(7, 24),
        mean_splus(11).unwrap() - ratio(11, 12) + ratio(7, 24)
    );
}
