//! Exact dynamic programming for the three-colour Pólya–Eggenberger urn with
//! identity replacement.
//!
//! The urn starts with one ball of each type (small, medium, large). Each
//! step draws a ball uniformly and returns it with one more of its type.
//! After `i` steps the numbers of added balls `(S_i, M_i, L_i)` have the same
//! law as the class counts after `i` classifications in one "Count"
//! partitioning stage, which is what makes the urn useful here.

use alloc::vec::Vec;

use num_traits::Zero;

use crate::error::{require_at_least, Result};
use crate::exact::{ratio, Rational};

/// Balls of each type added so far; the urn holds one more of each.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct UrnComposition {
    pub s: usize,
    pub m: usize,
    pub l: usize,
}

/// Exact law of the composition after `step` draws.
///
/// Stored densely over `(s, l)` with `m = step - s - l`; row `s` holds
/// `step - s + 1` entries.
#[derive(Clone, Debug, PartialEq)]
pub struct StateDistribution {
    step: usize,
    rows: Vec<Vec<Rational>>,
}

impl StateDistribution {
    /// Point mass at the empty composition.
    pub fn initial() -> Self {
        StateDistribution {
            step: 0,
            rows: alloc::vec![alloc::vec![Rational::from_integer(1.into())]],
        }
    }

    pub fn step(&self) -> usize {
        self.step
    }

    pub fn prob(&self, c: UrnComposition) -> Rational {
        if c.s + c.m + c.l != self.step {
            return Rational::zero();
        }
        self.rows[c.s][c.l].clone()
    }

    /// Every composition with its probability, ordered by `(s, l)`.
    pub fn iter(&self) -> impl Iterator<Item = (UrnComposition, &Rational)> + '_ {
        let step = self.step;
        self.rows.iter().enumerate().flat_map(move |(s, row)| {
            row.iter().enumerate().map(move |(l, p)| {
                (
                    UrnComposition {
                        s,
                        m: step - s - l,
                        l,
                    },
                    p,
                )
            })
        })
    }

    pub fn total_mass(&self) -> Rational {
        self.iter().fold(Rational::zero(), |acc, (_, p)| acc + p)
    }

    /// One draw: from `(s, m, l)` add a ball of each type with probability
    /// proportional to its current count, `(s+1)/(i+3)` and so on.
    pub fn dp_step(&self) -> StateDistribution {
        let i = self.step;
        let next = i + 1;
        let mut rows: Vec<Vec<Rational>> = (0..=next)
            .map(|s| alloc::vec![Rational::zero(); next - s + 1])
            .collect();
        let denom = (i + 3) as i64;
        for (c, p) in self.iter() {
            if p.is_zero() {
                continue;
            }
            rows[c.s + 1][c.l] += p * ratio(c.s as i64 + 1, denom);
            rows[c.s][c.l] += p * ratio(c.m as i64 + 1, denom);
            rows[c.s][c.l + 1] += p * ratio(c.l as i64 + 1, denom);
        }
        StateDistribution { step: next, rows }
    }

    /// `P(L_i > S_i)`.
    pub fn prob_l_gt_s(&self) -> Rational {
        self.sum_over_l_gt_s(|_| ratio(1, 1))
    }

    /// `P(L_{i+1} = L_i + 1, L_i > S_i)`, one-step lookahead through the
    /// transition kernel.
    pub fn prob_large_up_and_l_gt_s(&self) -> Rational {
        let denom = (self.step + 3) as i64;
        self.sum_over_l_gt_s(|c| ratio(c.l as i64 + 1, denom))
    }

    /// `P(S_{i+1} = S_i + 1, L_i > S_i)`.
    pub fn prob_small_up_and_l_gt_s(&self) -> Rational {
        let denom = (self.step + 3) as i64;
        self.sum_over_l_gt_s(|c| ratio(c.s as i64 + 1, denom))
    }

    /// `P(M_{i+1} = M_i + 1, L_i > S_i)`.
    pub fn prob_medium_up_and_l_gt_s(&self) -> Rational {
        let denom = (self.step + 3) as i64;
        self.sum_over_l_gt_s(|c| ratio(c.m as i64 + 1, denom))
    }

    fn sum_over_l_gt_s<F: Fn(UrnComposition) -> Rational>(&self, weight: F) -> Rational {
        self.iter()
            .filter(|(c, _)| c.l > c.s)
            .fold(Rational::zero(), |acc, (c, p)| acc + p * weight(c))
    }
}

/// Successive distributions `step 0, 1, 2, ...`.
#[derive(Clone, Debug)]
pub struct UrnWalk {
    next: Option<StateDistribution>,
}

impl UrnWalk {
    pub fn new() -> Self {
        UrnWalk {
            next: Some(StateDistribution::initial()),
        }
    }
}

impl Default for UrnWalk {
    fn default() -> Self {
        Self::new()
    }
}

impl Iterator for UrnWalk {
    type Item = StateDistribution;

    fn next(&mut self) -> Option<StateDistribution> {
        let current = self.next.take()?;
        self.next = Some(current.dp_step());
        Some(current)
    }
}

/// Distribution after `i` draws.
pub fn distribution_at(i: usize) -> StateDistribution {
    UrnWalk::new().nth(i).expect("walk is infinite")
}

/// `P(L_i > S_i)`.
pub fn prob_l_gt_s(i: usize) -> Rational {
    distribution_at(i).prob_l_gt_s()
}

/// `P(L_{i+1} = L_i + 1, L_i > S_i)`, defined for `i >= 1`.
pub fn prob_up_and_l_gt_s(i: usize) -> Result<Rational> {
    require_at_least("prob_up_and_l_gt_s", 1, i)?;
    Ok(distribution_at(i).prob_large_up_and_l_gt_s())
}

/// `P(L_i > S_i, S_{i+1} = S_i + 1)`, defined for `i >= 1`.
pub fn prob_smallup_and_l_gt_s(i: usize) -> Result<Rational> {
    require_at_least("prob_smallup_and_l_gt_s", 1, i)?;
    Ok(distribution_at(i).prob_small_up_and_l_gt_s())
}

/// `E[S+]` for an input of size `n`: `sum_{i=1}^{n-3} P(L_i > S_i, S_{i+1} = S_i + 1)`.
pub fn expected_splus(n: usize) -> Result<Rational> {
    require_at_least("expected_splus", 2, n)?;
    Ok(first_stage_expectations(n).splus)
}

/// `E[L+ - M+]` for an input of size `n`.
pub fn expected_lplus_minus_mplus(n: usize) -> Result<Rational> {
    require_at_least("expected_lplus_minus_mplus", 2, n)?;
    let e = first_stage_expectations(n);
    Ok(e.lplus - e.mplus)
}

/// Exact expectations of the `q`-first tallies of one partitioning stage on
/// `n` keys, computed from the urn.
#[derive(Clone, Debug, PartialEq)]
pub struct FirstStageExpectations {
    pub n: usize,
    pub splus: Rational,
    pub mplus: Rational,
    pub lplus: Rational,
}

/// All three tallies in one pass over steps `1..=n-3`.
pub fn first_stage_expectations(n: usize) -> FirstStageExpectations {
    let mut out = FirstStageExpectations {
        n,
        splus: Rational::zero(),
        mplus: Rational::zero(),
        lplus: Rational::zero(),
    };
    if n < 4 {
        return out;
    }
    for dist in UrnWalk::new().skip(1).take(n - 3) {
        out.splus += dist.prob_small_up_and_l_gt_s();
        out.mplus += dist.prob_medium_up_and_l_gt_s();
        out.lplus += dist.prob_large_up_and_l_gt_s();
    }
    out
}

/// Expectations for every `n` in `2..=max_n`, sharing one walk.
pub fn first_stage_expectations_upto(max_n: usize) -> Vec<FirstStageExpectations> {
    let mut acc = FirstStageExpectations {
        n: 0,
        splus: Rational::zero(),
        mplus: Rational::zero(),
        lplus: Rational::zero(),
    };
    let mut out = Vec::new();
    let mut walk = UrnWalk::new().skip(1);
    for n in 2..=max_n {
        if n >= 4 {
            // adds the step i = n - 3 term
            let dist = walk.next().expect("walk is infinite");
            acc.splus += dist.prob_small_up_and_l_gt_s();
            acc.mplus += dist.prob_medium_up_and_l_gt_s();
            acc.lplus += dist.prob_large_up_and_l_gt_s();
        }
        acc.n = n;
        out.push(acc.clone());
    }
    out
}

/// Closed forms the urn quantities are checked against.
pub mod closed_form {
    use super::*;

    /// `2 / ((i+1)(i+2))`, the common probability of every composition.
    pub fn uniform_prob(i: usize) -> Rational {
        ratio(2, ((i + 1) * (i + 2)) as i64)
    }

    pub fn prob_l_gt_s(i: usize) -> Rational {
        let i = i as i64;
        if i % 2 == 0 {
            ratio(i, 2 * (i + 1))
        } else {
            ratio(i + 1, 2 * (i + 2))
        }
    }

    pub fn prob_up_and_l_gt_s(i: usize) -> Rational {
        let i = i as i64;
        if i % 2 == 0 {
            ratio(i, 4 * (i + 1))
        } else {
            ratio(i + 1, 4 * (i + 2))
        }
    }

    pub fn prob_smallup_and_l_gt_s(i: usize) -> Rational {
        let i = i as i64;
        if i % 2 == 0 {
            ratio(i * (i + 4), 12 * (i + 1) * (i + 3))
        } else {
            ratio(1, 12)
        }
    }
}

/// Outcome of the identity checks at one step.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StepCheck {
    pub step: usize,
    pub uniform: bool,
    pub mass_one: bool,
    pub l_gt_s: bool,
    pub large_up: bool,
    pub small_up: bool,
    pub conditional_half: bool,
}

impl StepCheck {
    pub fn all_pass(&self) -> bool {
        self.uniform
            && self.mass_one
            && self.l_gt_s
            && self.large_up
            && self.small_up
            && self.conditional_half
    }
}

/// Checks every urn identity exactly for steps `1..=max_step`.
pub fn check_identities(max_step: usize) -> Vec<StepCheck> {
    UrnWalk::new()
        .skip(1)
        .take(max_step)
        .map(|dist| {
            let i = dist.step();
            let u = closed_form::uniform_prob(i);
            let gt = dist.prob_l_gt_s();
            let up = dist.prob_large_up_and_l_gt_s();
            StepCheck {
                step: i,
                uniform: dist.iter().all(|(_, p)| *p == u),
                mass_one: dist.total_mass() == ratio(1, 1),
                l_gt_s: gt == closed_form::prob_l_gt_s(i),
                large_up: up == closed_form::prob_up_and_l_gt_s(i),
                small_up: dist.prob_small_up_and_l_gt_s()
                    == closed_form::prob_smallup_and_l_gt_s(i),
                conditional_half: !gt.is_zero() && up / gt == ratio(1, 2),
            }
        })
        .collect()
}
