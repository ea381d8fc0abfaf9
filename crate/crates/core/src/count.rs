//! Dual-pivot quicksort "Count" with exact cost instrumentation.
//!
//! The two outermost elements are the pivots `p < q`. The remaining elements
//! are classified as small (`< p`), medium or large (`> q`). A counter `d`
//! tracks `#small - #large` seen so far: while `d >= 0` the next element is
//! taken from the left end of the unclassified window and compared to `p`
//! first; while `d < 0` it is taken from the right end and compared to `q`
//! first. A small element found on the `q`-first side is moved with one
//! cyclic rotation instead of two swaps.
//!
//! Pivots are read into locals rather than swapped into place, and the two
//! final placements are plain writes. Each placement is still charged as one
//! swap.

use alloc::vec;

use crate::cost::{less, rotate3, swap, CostProfile};

/// Which pivot an element was compared against first.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Branch {
    PFirst,
    QFirst,
}

/// Class of an element relative to the two pivots.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Class {
    Small,
    Medium,
    Large,
}

/// Receives one event per classified element, in classification order.
pub trait ClassificationSink {
    fn classified(&mut self, branch: Branch, class: Class);
}

impl ClassificationSink for () {
    #[inline]
    fn classified(&mut self, _: Branch, _: Class) {}
}

impl ClassificationSink for alloc::vec::Vec<(Branch, Class)> {
    fn classified(&mut self, branch: Branch, class: Class) {
        self.push((branch, class));
    }
}

/// Statistics of one partitioning stage over `n = right - left + 1` keys.
///
/// `t_c` and `t_s_half` are measured from the raw counters; the
/// `*_closed_form` methods rebuild them from the class tallies so the two
/// accountings can be reconciled.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct PartitionOutcome {
    pub n: usize,
    pub i1: usize,
    pub i2: usize,
    pub i3: usize,
    pub s_plus: usize,
    pub m_plus: usize,
    pub l_plus: usize,
    pub t_c: u64,
    pub t_s_half: u64,
    /// Final index of the smaller pivot.
    pub lower_pivot: usize,
    /// Final index of the larger pivot.
    pub upper_pivot: usize,
}

impl PartitionOutcome {
    /// `(n - 1) + I2 + I3 + S+ - L+`.
    pub fn t_c_closed_form(&self) -> u64 {
        ((self.n - 1 + self.i2 + self.i3 + self.s_plus) - self.l_plus) as u64
    }

    /// `2 * (2 + I1 + I3 + M+ - L+) + S+`, in half-swap units.
    pub fn t_s_half_closed_form(&self) -> u64 {
        (2 * (2 + self.i1 + self.i3 + self.m_plus - self.l_plus) + self.s_plus) as u64
    }

    /// Both raw-counter costs agree with their closed forms.
    pub fn reconciles(&self) -> bool {
        self.t_c == self.t_c_closed_form() && self.t_s_half == self.t_s_half_closed_form()
    }

    /// Weighted partition swaps in swap units.
    pub fn t_s(&self) -> f64 {
        self.t_s_half as f64 / 2.0
    }
}

/// One "Count" partitioning stage on `a[left..=right]`.
///
/// # Panics
///
/// If `left >= right` or `right` is out of bounds. Keys should be pairwise
/// distinct for the cost figures to carry their usual meaning; duplicates
/// still partition correctly.
pub fn partition_count<T: PartialOrd + Copy>(
    a: &mut [T],
    left: usize,
    right: usize,
    profile: &mut CostProfile,
) -> PartitionOutcome {
    partition_count_traced(a, left, right, profile, &mut ())
}

/// [`partition_count`] reporting every classification to `sink`.
pub fn partition_count_traced<T, S>(
    a: &mut [T],
    left: usize,
    right: usize,
    profile: &mut CostProfile,
    sink: &mut S,
) -> PartitionOutcome
where
    T: PartialOrd + Copy,
    S: ClassificationSink + ?Sized,
{
    assert!(
        left < right,
        "partition needs left < right (got {left}, {right})"
    );
    assert!(
        right < a.len(),
        "right index {right} out of bounds for length {}",
        a.len()
    );

    let start = *profile;
    let (p, q) = if less(&a[right], &a[left], profile) {
        (a[right], a[left])
    } else {
        (a[left], a[right])
    };

    let mut i = left + 1;
    let mut k = right - 1;
    let mut j = i;
    let mut d: i64 = 0;
    let (mut s_plus, mut m_plus, mut l_plus) = (0, 0, 0);

    // k never drops below j - 1 >= left, so the decrements cannot wrap.
    while j <= k {
        if d >= 0 {
            if less(&a[j], &p, profile) {
                swap(a, i, j, profile);
                i += 1;
                j += 1;
                d += 1;
                sink.classified(Branch::PFirst, Class::Small);
            } else if less(&a[j], &q, profile) {
                j += 1;
                sink.classified(Branch::PFirst, Class::Medium);
            } else {
                swap(a, j, k, profile);
                k -= 1;
                d -= 1;
                sink.classified(Branch::PFirst, Class::Large);
            }
        } else if less(&q, &a[k], profile) {
            k -= 1;
            d -= 1;
            l_plus += 1;
            sink.classified(Branch::QFirst, Class::Large);
        } else {
            if less(&a[k], &p, profile) {
                rotate3(a, k, j, i, profile);
                i += 1;
                d += 1;
                s_plus += 1;
                sink.classified(Branch::QFirst, Class::Small);
            } else {
                swap(a, j, k, profile);
                m_plus += 1;
                sink.classified(Branch::QFirst, Class::Medium);
            }
            j += 1;
        }
    }

    a[left] = a[i - 1];
    a[i - 1] = p;
    profile.plain_swaps += 1;
    a[right] = a[k + 1];
    a[k + 1] = q;
    profile.plain_swaps += 1;

    let spent = profile.since(&start);
    PartitionOutcome {
        n: right - left + 1,
        i1: i - 1 - left,
        i2: k + 1 - i,
        i3: right - k - 1,
        s_plus,
        m_plus,
        l_plus,
        t_c: spent.comparisons,
        t_s_half: spent.half_swaps(),
        lower_pivot: i - 1,
        upper_pivot: k + 1,
    }
}

/// Sorts `a` ascending with "Count" and returns the accumulated costs.
pub fn sort_count<T: PartialOrd + Copy>(a: &mut [T]) -> CostProfile {
    sort_count_observed(a, |_| {})
}

/// [`sort_count`], calling `observe` after every partitioning stage.
///
/// Subarrays are processed depth-first from an explicit stack, so adversarial
/// inputs with linear recursion depth do not exhaust the call stack. Ranges of
/// length below two cost nothing and are skipped.
pub fn sort_count_observed<T, F>(a: &mut [T], mut observe: F) -> CostProfile
where
    T: PartialOrd + Copy,
    F: FnMut(&PartitionOutcome),
{
    let mut profile = CostProfile::new();
    // Half-open ranges.
    let mut stack = vec![(0usize, a.len())];
    while let Some((lo, hi)) = stack.pop() {
        if hi - lo < 2 {
            continue;
        }
        let out = partition_count(a, lo, hi - 1, &mut profile);
        observe(&out);
        // Pushed in reverse so the left part is processed first.
        stack.push((out.upper_pivot + 1, hi));
        stack.push((out.lower_pivot + 1, out.upper_pivot));
        stack.push((lo, out.lower_pivot));
    }
    profile
}
