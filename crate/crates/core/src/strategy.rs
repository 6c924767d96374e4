//! Exhaustive manipulation search.
//!
//! A coalition's joint misreport is enumerated as a counter over
//! `m·ℓ·|S|` bits: the first coalition member owns the most significant
//! block and bit `t·m + p` of a member's block means "disapprove `p` at
//! `t`". The first misreport (in counter order) under which every member's
//! true disutility strictly drops is returned.

use rayon::prelude::*;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::greedy::greedy_minsum;
use crate::model::{disutility, ConstraintSet, Instance, InstanceBuilder, Outcome};
use crate::oracle::enumerate_optimal;
use crate::projects::ProjectSet;
use crate::random::{split, Rng};

/// Mechanisms under attack.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mechanism {
    /// Fewest disapprovals per timestep, ties to the lowest project.
    GreedyMinSum,
    /// Lexicographically smallest outcome among Min-Max optima.
    MinMaxLex,
}

impl Mechanism {
    pub fn name(self) -> &'static str {
        match self {
            Mechanism::GreedyMinSum => "greedy-minsum",
            Mechanism::MinMaxLex => "minmax-lex",
        }
    }

    pub fn run(self, instance: &Instance, budget: &Budget) -> Result<Outcome> {
        match self {
            Mechanism::GreedyMinSum => Ok(greedy_minsum(instance)),
            Mechanism::MinMaxLex => {
                let report = enumerate_optimal(instance, &ConstraintSet::empty(), budget)?;
                Ok(report
                    .min_max
                    .expect("unconstrained instances are feasible")
                    .outcome)
            }
        }
    }
}

impl std::str::FromStr for Mechanism {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "greedy-minsum" => Ok(Mechanism::GreedyMinSum),
            "minmax-lex" => Ok(Mechanism::MinMaxLex),
            other => Err(Error::validation(format!("unknown mechanism `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ManipulationResult {
    /// 0-based agent indices.
    pub coalition: Vec<usize>,
    pub found: bool,
    /// Per coalition member; empty when nothing was found.
    pub misreports: Vec<Vec<ProjectSet>>,
    pub truthful_outcome: Outcome,
    pub manipulated_outcome: Option<Outcome>,
    /// True disutilities under the truthful outcome, per member.
    pub truthful_disutility: Vec<usize>,
    /// True disutilities under the manipulated outcome; equal to the
    /// truthful ones when nothing was found.
    pub manipulated_disutility: Vec<usize>,
    /// Joint reports evaluated (the truthful one included).
    pub visited: u64,
}

fn report_from_mask(mask: u64, m: usize, ell: usize) -> Vec<ProjectSet> {
    (0..ell)
        .map(|t| (0..m).filter(|&p| mask >> (t * m + p) & 1 == 1).collect())
        .collect()
}

fn true_disutilities(
    instance: &Instance,
    outcome: &Outcome,
    coalition: &[usize],
) -> Result<Vec<usize>> {
    coalition
        .iter()
        .map(|&i| disutility(instance, outcome, i, instance.ell()))
        .collect()
}

/// Replaces every coalition member's report.
pub fn apply_reports(
    instance: &Instance,
    coalition: &[usize],
    reports: &[Vec<ProjectSet>],
) -> Result<Instance> {
    let mut next = instance.clone();
    for (&i, r) in coalition.iter().zip(reports) {
        next = next.with_report(i, r)?;
    }
    Ok(next)
}

/// Searches all joint misreports of `coalition` for one that strictly
/// helps every member.
pub fn search_manipulation(
    instance: &Instance,
    mechanism: Mechanism,
    coalition: &[usize],
    budget: &Budget,
) -> Result<ManipulationResult> {
    if coalition.is_empty() {
        return Err(Error::validation("coalition must be nonempty"));
    }
    let mut sorted = coalition.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != coalition.len() {
        return Err(Error::validation("coalition lists an agent twice"));
    }
    if let Some(&bad) = coalition.iter().find(|&&i| i >= instance.n()) {
        return Err(Error::validation(format!("agent {} out of range", bad + 1)));
    }
    let block = instance.m() * instance.ell();
    let bits = block * coalition.len();
    if bits >= 63 || (1u64 << bits) > budget.misreports {
        return Err(Error::BudgetExceeded {
            resource: "misreports",
            limit: budget.misreports,
        });
    }
    let truthful_outcome = mechanism.run(instance, budget)?;
    let truthful = true_disutilities(instance, &truthful_outcome, coalition)?;
    let mut result = ManipulationResult {
        coalition: coalition.to_vec(),
        found: false,
        misreports: Vec::new(),
        truthful_outcome: truthful_outcome.clone(),
        manipulated_outcome: None,
        truthful_disutility: truthful.clone(),
        manipulated_disutility: truthful.clone(),
        visited: 0,
    };
    let low = (1u64 << block) - 1;
    for counter in 0..(1u64 << bits) {
        result.visited += 1;
        let reports: Vec<Vec<ProjectSet>> = (0..coalition.len())
            .map(|j| {
                let shift = (coalition.len() - 1 - j) * block;
                report_from_mask((counter >> shift) & low, instance.m(), instance.ell())
            })
            .collect();
        let reported = apply_reports(instance, coalition, &reports)?;
        let outcome = mechanism.run(&reported, budget)?;
        let after = true_disutilities(instance, &outcome, coalition)?;
        if after.iter().zip(&truthful).all(|(a, b)| a < b) {
            result.found = true;
            result.misreports = reports;
            result.manipulated_outcome = Some(outcome);
            result.manipulated_disutility = after;
            return Ok(result);
        }
    }
    Ok(result)
}

/// Re-runs the mechanism on a reported manipulation and checks that the
/// claimed outcome and disutilities come back.
pub fn replay(
    instance: &Instance,
    mechanism: Mechanism,
    result: &ManipulationResult,
    budget: &Budget,
) -> Result<bool> {
    if !result.found {
        return Ok(true);
    }
    let reported = apply_reports(instance, &result.coalition, &result.misreports)?;
    let outcome = mechanism.run(&reported, budget)?;
    let after = true_disutilities(instance, &outcome, &result.coalition)?;
    Ok(Some(&outcome) == result.manipulated_outcome.as_ref()
        && after == result.manipulated_disutility)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpViolation {
    /// Trial index; the instance is regenerated from `split(seed, trial)`.
    pub trial: u64,
    pub instance: Instance,
    pub result: ManipulationResult,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpReport {
    pub mechanism: Mechanism,
    pub seed: u64,
    pub trials: u64,
    pub misreports_checked: u64,
    pub violations: Vec<SpViolation>,
}

/// Searches every singleton coalition on `trials` generated instances.
/// Trial `t` draws its instance from `split(seed, t)`.
pub fn verify_sp<G>(
    generate: G,
    mechanism: Mechanism,
    trials: u64,
    seed: u64,
    budget: &Budget,
) -> Result<SpReport>
where
    G: Fn(&mut Rng) -> Instance + Sync,
{
    let per_trial: Vec<Result<(u64, Vec<SpViolation>)>> = (0..trials)
        .into_par_iter()
        .map(|trial| {
            let instance = generate(&mut split(seed, trial));
            let mut checked = 0;
            let mut violations = Vec::new();
            for agent in 0..instance.n() {
                let result = search_manipulation(&instance, mechanism, &[agent], budget)?;
                checked += result.visited;
                if result.found {
                    violations.push(SpViolation {
                        trial,
                        instance: instance.clone(),
                        result,
                    });
                }
            }
            Ok((checked, violations))
        })
        .collect();
    let mut report = SpReport {
        mechanism,
        seed,
        trials,
        misreports_checked: 0,
        violations: Vec::new(),
    };
    for r in per_trial {
        let (checked, violations) = r?;
        report.misreports_checked += checked;
        report.violations.extend(violations);
    }
    Ok(report)
}

/// Five agents, two projects, three timesteps: agent `t` (t ≤ 3)
/// disapproves p1 at timestep `t` only, agents 4 and 5 disapprove p2
/// everywhere.
pub fn gsp_fixture() -> Instance {
    let mut b = InstanceBuilder::new(5, 2, 3);
    for t in 0..3 {
        b.disapprove(t, t, 0)
            .disapprove(3, t, 1)
            .disapprove(4, t, 1);
    }
    b.build().expect("fixture is valid")
}

/// Three agents, three projects, two timesteps: everyone disapproves p2
/// and p3 first, then agent `i` disapproves p_i.
pub fn minmax_sp_fixture() -> Instance {
    let mut b = InstanceBuilder::new(3, 3, 2);
    for i in 0..3 {
        b.disapprove(i, 0, 1)
            .disapprove(i, 0, 2)
            .disapprove(i, 1, i);
    }
    b.build().expect("fixture is valid")
}
