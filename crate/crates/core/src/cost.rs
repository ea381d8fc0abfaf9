//! Cost accounting shared by both quicksort variants.
//!
//! Every key comparison and every data movement performed by the sorting
//! routines goes through the helpers in this module, so the counters in a
//! [`CostProfile`] are exactly the number of times each primitive ran.

use core::ops::{Add, AddAssign};

/// Running tally of the primitive operations of one sorting run.
///
/// Swaps are weighted in half-swap units: a plain swap counts 2, a
/// three-element cyclic rotation counts 3. The weighted total is always an
/// integer and is derived from the two movement counters, never stored.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct CostProfile {
    pub comparisons: u64,
    pub plain_swaps: u64,
    pub rotate3_ops: u64,
}

impl CostProfile {
    pub const fn new() -> Self {
        CostProfile {
            comparisons: 0,
            plain_swaps: 0,
            rotate3_ops: 0,
        }
    }

    /// Weighted swap total in half-swap units: `2 * plain + 3 * rotate3`.
    pub const fn half_swaps(&self) -> u64 {
        2 * self.plain_swaps + 3 * self.rotate3_ops
    }

    /// Weighted swap total in swap units.
    pub fn swaps(&self) -> f64 {
        self.half_swaps() as f64 / 2.0
    }

    /// Counter-wise difference `self - earlier`. Counters are monotone, so
    /// `earlier` must be a snapshot taken before `self`.
    pub fn since(&self, earlier: &CostProfile) -> CostProfile {
        CostProfile {
            comparisons: self.comparisons - earlier.comparisons,
            plain_swaps: self.plain_swaps - earlier.plain_swaps,
            rotate3_ops: self.rotate3_ops - earlier.rotate3_ops,
        }
    }
}

impl AddAssign for CostProfile {
    fn add_assign(&mut self, rhs: CostProfile) {
        self.comparisons += rhs.comparisons;
        self.plain_swaps += rhs.plain_swaps;
        self.rotate3_ops += rhs.rotate3_ops;
    }
}

impl Add for CostProfile {
    type Output = CostProfile;

    fn add(mut self, rhs: CostProfile) -> CostProfile {
        self += rhs;
        self
    }
}

/// `a < b`, counted as one key comparison.
#[inline]
pub(crate) fn less<T: PartialOrd>(a: &T, b: &T, profile: &mut CostProfile) -> bool {
    profile.comparisons += 1;
    a < b
}

/// Swaps two slots (possibly the same one), counted as one plain swap.
#[inline]
pub(crate) fn swap<T>(a: &mut [T], x: usize, y: usize, profile: &mut CostProfile) {
    profile.plain_swaps += 1;
    a.swap(x, y);
}

/// Cyclic left rotation over three slots:
/// `tmp <- a[k]; a[k] <- a[j]; a[j] <- a[i]; a[i] <- tmp`.
///
/// Coinciding indices follow the three assignments literally. Counted as one
/// rotation (3 half-swaps) regardless.
///
/// # Panics
///
/// If any index is out of bounds.
pub fn rotate3<T: Copy>(a: &mut [T], k: usize, j: usize, i: usize, profile: &mut CostProfile) {
    let tmp = a[k];
    a[k] = a[j];
    a[j] = a[i];
    a[i] = tmp;
    profile.rotate3_ops += 1;
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rotate3_moves_left_cyclically() {
        let mut a = ['x', 'y', 'z'];
        let mut p = CostProfile::new();
        rotate3(&mut a, 2, 1, 0, &mut p);
        assert_eq!(a, ['z', 'x', 'y']);
        assert_eq!(p.rotate3_ops, 1);
        assert_eq!(p.half_swaps(), 3);
    }

    #[test]
    fn rotate3_with_coinciding_indices() {
        // k == j: a[k] <- a[j] is a no-op, so this is a swap of a[i] and a[k].
        let mut a = [1, 2, 3];
        let mut p = CostProfile::new();
        rotate3(&mut a, 2, 2, 0, &mut p);
        assert_eq!(a, [3, 2, 1]);

        // j == i: tmp <- a[k]; a[k] <- a[i]; a[i] <- tmp, again a swap.
        let mut b = [1, 2, 3];
        rotate3(&mut b, 2, 0, 0, &mut p);
        assert_eq!(b, [3, 2, 1]);

        // All equal: nothing moves.
        let mut c = [1, 2, 3];
        rotate3(&mut c, 1, 1, 1, &mut p);
        assert_eq!(c, [1, 2, 3]);
        assert_eq!(p.rotate3_ops, 3);
        assert_eq!(p.half_swaps(), 9);
    }

    #[test]
    fn half_swaps_weighting() {
        let p = CostProfile {
            comparisons: 7,
            plain_swaps: 5,
            rotate3_ops: 2,
        };
        assert_eq!(p.half_swaps(), 16);
        assert_eq!(p.swaps(), 8.0);
        let q = p + p;
        assert_eq!(q.since(&p), p);
    }
}
