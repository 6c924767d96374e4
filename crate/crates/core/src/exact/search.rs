use crate::budget::Budget;
use crate::error::Result;
use crate::model::{ConstraintSet, Instance, Outcome};

use super::dp::solve_dp;

/// Least `λ ∈ 0..=ell` for which `decide({(ell, λ)})` answers yes, found by
/// binary search, with the witness the decision procedure returned.
pub fn minimize_with<T, F>(ell: usize, mut decide: F) -> Result<(usize, T)>
where
    F: FnMut(&ConstraintSet) -> Result<Option<T>>,
{
    let (mut lo, mut hi) = (0, ell);
    let mut best = None;
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        match decide(&ConstraintSet::single(ell, mid))? {
            Some(w) => {
                hi = mid;
                best = Some(w);
            }
            None => lo = mid + 1,
        }
    }
    let witness = match best {
        Some(w) => w,
        None => decide(&ConstraintSet::single(ell, lo))?.expect("lambda = ell is always feasible"),
    };
    Ok((lo, witness))
}

/// Exact Min-Max value and a witness, via the dynamic program.
pub fn minimize_minmax(instance: &Instance, budget: &Budget) -> Result<(usize, Outcome)> {
    minimize_with(instance.ell(), |cs| solve_dp(instance, cs, budget))
}
