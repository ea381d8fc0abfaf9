use dpqs_core::count::{partition_count_traced, Branch, Class};
use dpqs_core::exact::{mean_comparisons, ratio};
use dpqs_core::exhaustive::run_exhaustive;
use dpqs_core::perm::random_permutation;
use dpqs_core::rng::sample_rng;
use dpqs_core::{partition_count, sort_classic, sort_count, sort_count_observed, CostProfile};
use proptest::prelude::*;

fn sorted_copy(v: &[i64]) -> Vec<i64> {
    let mut s = v.to_vec();
    s.sort();
    s
}

proptest! {
    #[test]
    fn count_sorts_any_input(v in prop::collection::vec(-50i64..50, 0..200)) {
        let mut a = v.clone();
        sort_count(&mut a);
        prop_assert_eq!(a, sorted_copy(&v));
    }

    #[test]
    fn classic_sorts_any_input(v in prop::collection::vec(-50i64..50, 0..200)) {
        let mut a = v.clone();
        let p = sort_classic(&mut a);
        prop_assert_eq!(a, sorted_copy(&v));
        prop_assert_eq!(p.rotate3_ops, 0);
    }

    #[test]
    fn every_stage_reconciles(seed in any::<u64>(), n in 2usize..300) {
        let mut a = random_permutation(n, &mut sample_rng(seed, 0));
        let mut stages = 0;
        let mut sum = CostProfile::new();
        let total = sort_count_observed(&mut a, |out| {
            assert!(out.reconciles(), "{out:?}");
            assert_eq!(out.i1 + out.i2 + out.i3, out.n - 2);
            assert!(out.s_plus <= out.i1 && out.m_plus <= out.i2 && out.l_plus <= out.i3);
            assert!(out.n < 3 || out.s_plus + out.m_plus + out.l_plus <= out.n - 3);
            sum.comparisons += out.t_c;
            stages += 1;
        });
        prop_assert!(a.windows(2).all(|w| w[0] < w[1]));
        prop_assert_eq!(sum.comparisons, total.comparisons);
        prop_assert!(stages >= 1);
    }
}

#[test]
fn reconciliation_on_ten_thousand_first_stages() {
    for k in 0..10_000u64 {
        let mut rng = sample_rng(99, k);
        let n = 2 + (k as usize % 99);
        let mut a = random_permutation(n, &mut rng);
        let out = partition_count(&mut a, 0, n - 1, &mut CostProfile::new());
        assert_eq!(out.t_c, out.t_c_closed_form(), "n = {n}, sample {k}");
        assert_eq!(
            out.t_s_half,
            out.t_s_half_closed_form(),
            "n = {n}, sample {k}"
        );
    }
}

#[test]
fn branch_follows_running_difference() {
    for k in 0..500u64 {
        let n = 3 + (k as usize % 60);
        let mut a = random_permutation(n, &mut sample_rng(5, k));
        let mut trace = Vec::new();
        let out = partition_count_traced(&mut a, 0, n - 1, &mut CostProfile::new(), &mut trace);
        assert_eq!(trace.len(), n - 2);
        let (mut small, mut large) = (0usize, 0usize);
        let (mut sp, mut mp, mut lp) = (0, 0, 0);
        for &(branch, class) in &trace {
            let expected = if large > small {
                Branch::QFirst
            } else {
                Branch::PFirst
            };
            assert_eq!(branch, expected);
            match class {
                Class::Small => small += 1,
                Class::Large => large += 1,
                Class::Medium => {}
            }
            if branch == Branch::QFirst {
                match class {
                    Class::Small => sp += 1,
                    Class::Medium => mp += 1,
                    Class::Large => lp += 1,
                }
            }
        }
        assert_eq!((small, large), (out.i1, out.i3));
        assert_eq!((sp, mp, lp), (out.s_plus, out.m_plus, out.l_plus));
    }
}

fn adversarial(n: usize) -> Vec<Vec<u64>> {
    let sorted: Vec<u64> = (0..n as u64).collect();
    let reverse: Vec<u64> = sorted.iter().rev().copied().collect();
    let organ: Vec<u64> = (0..n as u64)
        .map(|k| if k < n as u64 / 2 { k } else { n as u64 - k })
        .collect();
    let equal = vec![7u64; n];
    let sawtooth: Vec<u64> = (0..n as u64).map(|k| k % 5).collect();
    vec![sorted, reverse, organ, equal, sawtooth]
}

#[test]
fn adversarial_patterns_sort() {
    for n in [0, 1, 2, 3, 10, 257, 5000] {
        for input in adversarial(n) {
            let mut expected = input.clone();
            expected.sort();
            let mut a = input.clone();
            sort_count(&mut a);
            assert_eq!(a, expected);
            let mut b = input;
            sort_classic(&mut b);
            assert_eq!(b, expected);
        }
    }
}

#[test]
fn exhaustive_small_sizes_match_formulas() {
    for n in 2..=8 {
        let r = run_exhaustive(n).unwrap();
        assert!(r.passed(), "n = {n}: {r:?}");
    }
    assert_eq!(
        run_exhaustive(4).unwrap().mean_comparisons,
        mean_comparisons(4)
    );
}

#[test]
fn float_keys_sort() {
    let mut a = [0.5, -1.25, 3.0, 2.0, 0.0];
    let p = sort_count(&mut a);
    assert_eq!(a, [-1.25, 0.0, 0.5, 2.0, 3.0]);
    assert!(p.comparisons > 0);
    let _ = ratio(1, 2);
}
