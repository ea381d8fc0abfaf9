//! Exact averages over all `n!` permutations, compared with the closed forms.

use alloc::collections::BTreeMap;

use num_bigint::BigInt;

use crate::cost::CostProfile;
use crate::count::{partition_count, sort_count};
use crate::error::{require_at_least, Error, Result};
use crate::exact::{self, ratio, Rational};
use crate::perm::{factorial, Permutations};

/// Largest size the exhaustive oracle accepts.
pub const MAX_EXHAUSTIVE_N: usize = 10;

fn check_range(what: &'static str, n: usize) -> Result<()> {
    require_at_least(what, 2, n)?;
    if n > MAX_EXHAUSTIVE_N {
        return Err(Error::AboveMaximum {
            what,
            max: MAX_EXHAUSTIVE_N,
            got: n,
        });
    }
    Ok(())
}

fn average(total: u128, count: u64) -> Rational {
    Rational::new(BigInt::from(total), BigInt::from(count))
}

/// Full-sort averages over every permutation of `1..=n`.
#[derive(Clone, Debug, PartialEq)]
pub struct ExhaustiveReport {
    pub n: usize,
    pub permutations: u64,
    pub mean_comparisons: Rational,
    /// In half-swap units.
    pub mean_half_swaps: Rational,
    pub formula_comparisons: Rational,
    /// In swap units.
    pub formula_swaps: Rational,
    pub comparisons_match: bool,
    pub swaps_match: bool,
}

impl ExhaustiveReport {
    pub fn passed(&self) -> bool {
        self.comparisons_match && self.swaps_match
    }
}

/// Sorts every permutation of `1..=n` and averages the costs exactly.
///
/// # Errors
///
/// `n` outside `2..=10`.
pub fn run_exhaustive(n: usize) -> Result<ExhaustiveReport> {
    check_range("run_exhaustive", n)?;
    let (mut comparisons, mut half_swaps) = (0u128, 0u128);
    let mut count = 0u64;
    for mut perm in Permutations::new(n) {
        let p = sort_count(&mut perm);
        comparisons += u128::from(p.comparisons);
        half_swaps += u128::from(p.half_swaps());
        count += 1;
    }
    debug_assert_eq!(count, factorial(n));
    let mean_comparisons = average(comparisons, count);
    let mean_half_swaps = average(half_swaps, count);
    let formula_comparisons = exact::mean_comparisons(n as u64);
    let formula_swaps = exact::mean_swaps(n as u64);
    Ok(ExhaustiveReport {
        n,
        permutations: count,
        comparisons_match: mean_comparisons == formula_comparisons,
        swaps_match: mean_half_swaps == &formula_swaps * ratio(2, 1),
        mean_comparisons,
        mean_half_swaps,
        formula_comparisons,
        formula_swaps,
    })
}

/// First-stage averages over every permutation of `1..=n`.
#[derive(Clone, Debug, PartialEq)]
pub struct PartitionReport {
    pub n: usize,
    pub permutations: u64,
    pub mean_i1: Rational,
    pub mean_i2: Rational,
    pub mean_i3: Rational,
    pub mean_splus: Rational,
    pub mean_mplus: Rational,
    pub mean_lplus: Rational,
    pub mean_t_c: Rational,
    /// Weighted partition swaps in swap units.
    pub mean_t_s: Rational,
    pub formula_t_s: Rational,
    pub formula_splus: Rational,
    pub t_s_match: bool,
    pub splus_match: bool,
    /// `E[S+] == E[L+ - M+]`.
    pub splus_balance: bool,
    /// Every stage reconciled its raw counters with the closed forms.
    pub all_reconciled: bool,
    /// How often each sublist-size triple `(I1, I2, I3)` occurred.
    pub sublist_sizes: BTreeMap<(usize, usize, usize), u64>,
}

impl PartitionReport {
    pub fn passed(&self) -> bool {
        self.t_s_match && self.splus_match && self.splus_balance && self.all_reconciled
    }
}

/// Runs the first partitioning stage on every permutation of `1..=n`.
///
/// # Errors
///
/// `n` outside `2..=10`.
pub fn run_exhaustive_partition(n: usize) -> Result<PartitionReport> {
    check_range("run_exhaustive_partition", n)?;
    let mut sums = [0u128; 8];
    let mut count = 0u64;
    let mut all_reconciled = true;
    let mut sublist_sizes = BTreeMap::new();
    for mut perm in Permutations::new(n) {
        let out = partition_count(&mut perm, 0, n - 1, &mut CostProfile::new());
        all_reconciled &= out.reconciles();
        let fields = [
            out.i1 as u128,
            out.i2 as u128,
            out.i3 as u128,
            out.s_plus as u128,
            out.m_plus as u128,
            out.l_plus as u128,
            u128::from(out.t_c),
            u128::from(out.t_s_half),
        ];
        for (s, f) in sums.iter_mut().zip(fields) {
            *s += f;
        }
        *sublist_sizes.entry((out.i1, out.i2, out.i3)).or_insert(0) += 1;
        count += 1;
    }
    let [i1, i2, i3, sp, mp, lp, tc, ts] = sums.map(|s| average(s, count));
    let mean_t_s = ts / ratio(2, 1);
    let formula_t_s = exact::mean_partition_swaps(n as u64)?;
    let formula_splus = exact::mean_splus(n as u64)?;
    Ok(PartitionReport {
        n,
        permutations: count,
        t_s_match: mean_t_s == formula_t_s,
        splus_match: sp == formula_splus,
        splus_balance: sp == &lp - &mp,
        all_reconciled,
        mean_i1: i1,
        mean_i2: i2,
        mean_i3: i3,
        mean_splus: sp,
        mean_mplus: mp,
        mean_lplus: lp,
        mean_t_c: tc,
        mean_t_s,
        formula_t_s,
        formula_splus,
        sublist_sizes,
    })
}
