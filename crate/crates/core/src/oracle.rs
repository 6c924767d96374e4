//! Brute-force ground truth.
//!
//! Every procedure here enumerates all outcomes in lexicographic order of
//! their project vectors and keeps the first optimum it meets, so reported
//! witnesses are the lexicographically smallest ones. No pruning: this
//! module is the reference the clever solvers are tested against.

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::model::{disutilities, satisfies, ConstraintSet, Instance, Objective, Outcome};

/// An optimal value together with the lexicographically smallest outcome
/// attaining it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Optimum {
    pub value: usize,
    pub outcome: Outcome,
}

/// Exact optima over all outcomes satisfying a constraint set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleReport {
    /// Whether any outcome satisfies the constraints.
    pub feasible: bool,
    /// `None` exactly when infeasible.
    pub min_sum: Option<Optimum>,
    pub min_max: Option<Optimum>,
    /// Lexicographically first constraint-satisfying outcome under which
    /// all agents have equal disutility.
    pub equitable: Option<Outcome>,
    pub visited: u64,
}

impl OracleReport {
    pub fn optimum(&self, objective: Objective) -> Option<&Optimum> {
        match objective {
            Objective::MinSum => self.min_sum.as_ref(),
            Objective::MinMax => self.min_max.as_ref(),
        }
    }

    pub fn equitable_exists(&self) -> bool {
        self.equitable.is_some()
    }
}

/// Refuses instances whose outcome space exceeds the budget.
pub fn check_budget(instance: &Instance, budget: &Budget) -> Result<()> {
    if instance.outcome_count() > budget.outcomes as u128 {
        return Err(Error::BudgetExceeded {
            resource: "outcome enumeration",
            limit: budget.outcomes,
        });
    }
    Ok(())
}

/// Calls `visit` on every outcome in lexicographic order. Stops early when
/// `visit` returns `false`.
pub fn for_each_outcome<F>(instance: &Instance, budget: &Budget, mut visit: F) -> Result<u64>
where
    F: FnMut(&Outcome) -> bool,
{
    check_budget(instance, budget)?;
    let menus: Vec<Vec<usize>> = (0..instance.ell())
        .map(|k| instance.available(k).iter().collect())
        .collect();
    let mut digits = vec![0usize; menus.len()];
    let mut outcome = Outcome::new(menus.iter().map(|menu| menu[0]).collect());
    let mut visited = 0u64;
    loop {
        visited += 1;
        if !visit(&outcome) {
            return Ok(visited);
        }
        // odometer: increment the last timestep first
        let mut k = menus.len();
        let mut selections = outcome.into_selections();
        loop {
            if k == 0 {
                return Ok(visited);
            }
            k -= 1;
            digits[k] += 1;
            if digits[k] < menus[k].len() {
                selections[k] = menus[k][digits[k]];
                break;
            }
            digits[k] = 0;
            selections[k] = menus[k][0];
        }
        outcome = Outcome::new(selections);
    }
}

/// Exact Min-Sum and Min-Max optima subject to `constraints`.
pub fn enumerate_optimal(
    instance: &Instance,
    constraints: &ConstraintSet,
    budget: &Budget,
) -> Result<OracleReport> {
    constraints.validate_for(instance)?;
    let mut min_sum: Option<Optimum> = None;
    let mut min_max: Option<Optimum> = None;
    let mut equitable: Option<Outcome> = None;
    let visited = for_each_outcome(instance, budget, |o| {
        if !satisfies(instance, o, constraints) {
            return true;
        }
        let d = disutilities(instance, o, o.len());
        let sum: usize = d.iter().sum();
        let max = d.iter().copied().max().unwrap_or(0);
        if min_sum.as_ref().is_none_or(|best| sum < best.value) {
            min_sum = Some(Optimum {
                value: sum,
                outcome: o.clone(),
            });
        }
        if min_max.as_ref().is_none_or(|best| max < best.value) {
            min_max = Some(Optimum {
                value: max,
                outcome: o.clone(),
            });
        }
        if equitable.is_none() && d.iter().all(|&x| x == d[0]) {
            equitable = Some(o.clone());
        }
        true
    })?;
    Ok(OracleReport {
        feasible: min_sum.is_some(),
        min_sum,
        min_max,
        equitable,
        visited,
    })
}

/// Lexicographically first outcome satisfying `constraints`, if any.
pub fn first_feasible(
    instance: &Instance,
    constraints: &ConstraintSet,
    budget: &Budget,
) -> Result<Option<Outcome>> {
    constraints.validate_for(instance)?;
    let mut found = None;
    for_each_outcome(instance, budget, |o| {
        if satisfies(instance, o, constraints) {
            found = Some(o.clone());
            false
        } else {
            true
        }
    })?;
    Ok(found)
}

/// The lexicographically first equitable outcome, if one exists.
pub fn equitable_exists(instance: &Instance, budget: &Budget) -> Result<Option<Outcome>> {
    let mut found = None;
    for_each_outcome(instance, budget, |o| {
        let d = disutilities(instance, o, o.len());
        if d.iter().all(|&x| x == d[0]) {
            found = Some(o.clone());
            false
        } else {
            true
        }
    })?;
    Ok(found)
}

/// Every equitable outcome, in lexicographic order.
pub fn equitable_outcomes(instance: &Instance, budget: &Budget) -> Result<Vec<Outcome>> {
    let mut all = Vec::new();
    for_each_outcome(instance, budget, |o| {
        let d = disutilities(instance, o, o.len());
        if d.iter().all(|&x| x == d[0]) {
            all.push(o.clone());
        }
        true
    })?;
    Ok(all)
}
