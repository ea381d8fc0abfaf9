use std::collections::BTreeMap;

use dpqs_core::exact::{mean_splus, ratio};
use dpqs_core::exhaustive::run_exhaustive_partition;
use dpqs_core::perm::factorial;
use dpqs_core::urn::{
    check_identities, distribution_at, expected_lplus_minus_mplus, expected_splus,
    first_stage_expectations_upto, StateDistribution, UrnWalk,
};
use num_traits::Zero;

#[test]
fn identities_hold_through_step_60() {
    let checks = check_identities(60);
    assert_eq!(checks.len(), 60);
    for c in checks {
        assert!(c.all_pass(), "{c:?}");
    }
}

#[test]
fn splus_matches_closed_form_up_to_200() {
    for e in first_stage_expectations_upto(200) {
        assert_eq!(e.splus, mean_splus(e.n as u64).unwrap(), "n = {}", e.n);
        assert_eq!(&e.lplus - &e.mplus, e.splus, "balance at n = {}", e.n);
    }
    assert_eq!(expected_splus(10).unwrap(), mean_splus(10).unwrap());
    assert_eq!(
        expected_lplus_minus_mplus(10).unwrap(),
        mean_splus(10).unwrap()
    );
}

#[test]
fn mass_is_conserved_at_every_step() {
    for d in UrnWalk::new().take(40) {
        assert_eq!(d.total_mass(), ratio(1, 1));
        assert_eq!(d.iter().count(), (d.step() + 1) * (d.step() + 2) / 2);
    }
}

#[test]
fn dp_step_from_initial() {
    let d1 = StateDistribution::initial().dp_step();
    assert_eq!(d1, distribution_at(1));
}

#[test]
fn sublist_sizes_follow_the_urn() {
    for n in 2..=8usize {
        let report = run_exhaustive_partition(n).unwrap();
        let total = factorial(n) as i64;
        let urn = distribution_at(n - 2);
        let mut from_sort: BTreeMap<(usize, usize, usize), _> = BTreeMap::new();
        for (k, v) in &report.sublist_sizes {
            from_sort.insert(*k, ratio(*v as i64, total));
        }
        for (c, p) in urn.iter() {
            let got = from_sort
                .remove(&(c.s, c.m, c.l))
                .unwrap_or_else(Zero::zero);
            assert_eq!(&got, p, "n = {n}, composition {c:?}");
        }
        assert!(
            from_sort.is_empty(),
            "sort produced sizes outside the urn support"
        );
    }
}
