//! Permutation sources: exhaustive lexicographic enumeration and uniform
//! random permutations.

use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::Rng;

/// Every permutation of `1..=n`, each exactly once, in lexicographic order.
#[derive(Clone, Debug)]
pub struct Permutations {
    current: Vec<u64>,
    done: bool,
}

impl Permutations {
    pub fn new(n: usize) -> Self {
        Permutations {
            current: (1..=n as u64).collect(),
            done: false,
        }
    }
}

impl Iterator for Permutations {
    type Item = Vec<u64>;

    fn next(&mut self) -> Option<Vec<u64>> {
        if self.done {
            return None;
        }
        let out = self.current.clone();
        if !next_permutation(&mut self.current) {
            self.done = true;
        }
        Some(out)
    }
}

/// Advances `a` to its lexicographic successor; `false` when `a` was the last
/// permutation (it is then left unchanged).
pub fn next_permutation<T: Ord>(a: &mut [T]) -> bool {
    if a.len() < 2 {
        return false;
    }
    let mut i = a.len() - 1;
    while i > 0 && a[i - 1] >= a[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = a.len() - 1;
    while a[j] <= a[i - 1] {
        j -= 1;
    }
    a.swap(i - 1, j);
    a[i..].reverse();
    true
}

/// `n!`.
pub fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

/// A uniformly random permutation of `1..=n` (Fisher–Yates).
pub fn random_permutation<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Vec<u64> {
    let mut v: Vec<u64> = (1..=n as u64).collect();
    v.shuffle(rng);
    v
}
