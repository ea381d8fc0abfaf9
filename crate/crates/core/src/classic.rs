//! Classic single-pivot quicksort with crossing pointers (Hoare partitioning
//! in Sedgewick's formulation), first element as pivot. Used as the baseline
//! whose comparison and exchange counts are strongly negatively correlated.

use alloc::vec;

use crate::cost::{less, swap, CostProfile};

/// One crossing-pointer partition of `a[lo..=hi]` around `a[lo]`. Returns the
/// final pivot index.
///
/// Both scans stop on keys equal to the pivot, so runs of equal keys split
/// evenly. The downward scan is stopped by the pivot itself at `lo`.
fn partition_classic<T: PartialOrd + Copy>(
    a: &mut [T],
    lo: usize,
    hi: usize,
    profile: &mut CostProfile,
) -> usize {
    let p = a[lo];
    let mut i = lo;
    let mut j = hi + 1;
    loop {
        loop {
            i += 1;
            if i > hi || !less(&a[i], &p, profile) {
                break;
            }
        }
        loop {
            j -= 1;
            if !less(&p, &a[j], profile) {
                break;
            }
        }
        if i >= j {
            break;
        }
        swap(a, i, j, profile);
    }
    swap(a, lo, j, profile);
    j
}

/// Sorts `a` ascending with classic quicksort and returns its costs.
/// `rotate3_ops` is always zero.
pub fn sort_classic<T: PartialOrd + Copy>(a: &mut [T]) -> CostProfile {
    let mut profile = CostProfile::new();
    let mut stack = vec![(0usize, a.len())];
    while let Some((lo, hi)) = stack.pop() {
        if hi - lo < 2 {
            continue;
        }
        let m = partition_classic(a, lo, hi - 1, &mut profile);
        stack.push((m + 1, hi));
        stack.push((lo, m));
    }
    profile
}
