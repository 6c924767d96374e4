//! Ratio measurements over the families and random sweeps.

use num::rational::Ratio;
use num::{One, Zero};
use rand::seq::IteratorRandom;
use rayon::prelude::*;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::greedy::{run_online, FnAlgorithm, Greedy, OnlineState};
use crate::model::{Column, ConstraintSet, Instance, Objective, Outcome};
use crate::oracle::{enumerate_optimal, equitable_outcomes, OracleReport};
use crate::random::{random_constraints, random_small_instance, split, Rng};

use super::families::{gen_family, Family, SplitSequence};

pub type Rational = Ratio<i64>;

fn int(v: usize) -> Rational {
    Rational::from_integer(v as i64)
}

/// `num / den`, with `0/0` read as 1.
pub fn ratio_of(num: Rational, den: Rational) -> Result<Rational> {
    if den.is_zero() {
        if num.is_zero() {
            return Ok(Rational::one());
        }
        return Err(Error::precondition("ratio with zero denominator"));
    }
    Ok(num / den)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SampleStats {
    pub repetitions: u64,
    pub mean: f64,
    pub std_error: f64,
}

impl SampleStats {
    pub fn of(values: &[usize]) -> Self {
        let n = values.len() as f64;
        let mean = values.iter().sum::<usize>() as f64 / n;
        let var = if values.len() > 1 {
            values
                .iter()
                .map(|&v| (v as f64 - mean).powi(2))
                .sum::<f64>()
                / (n - 1.0)
        } else {
            0.0
        };
        SampleStats {
            repetitions: values.len() as u64,
            mean,
            std_error: (var / n).sqrt(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RatioReport {
    pub family: String,
    pub params: String,
    pub numerator: Rational,
    pub denominator: Rational,
    pub ratio: Rational,
    /// The value the construction is expected to produce, for comparison.
    pub bound: Option<Rational>,
    /// Sample statistics of the numerator for randomized runs.
    pub stats: Option<SampleStats>,
}

impl RatioReport {
    fn new(
        family: &str,
        params: String,
        numerator: Rational,
        denominator: Rational,
    ) -> Result<Self> {
        Ok(RatioReport {
            family: family.to_string(),
            params,
            ratio: ratio_of(numerator, denominator)?,
            numerator,
            denominator,
            bound: None,
            stats: None,
        })
    }

    pub fn with_bound(mut self, bound: Rational) -> Self {
        self.bound = Some(bound);
        self
    }
}

fn optimum(report: &OracleReport, objective: Objective) -> Option<usize> {
    report.optimum(objective).map(|o| o.value)
}

/// Best constrained value over best unconstrained value. `None` when the
/// constraints are infeasible.
pub fn measure_potf(
    instance: &Instance,
    constraints: &ConstraintSet,
    objective: Objective,
    budget: &Budget,
) -> Result<Option<RatioReport>> {
    let constrained = enumerate_optimal(instance, constraints, budget)?;
    let Some(num) = optimum(&constrained, objective) else {
        return Ok(None);
    };
    let free = if constraints.is_empty() {
        constrained
    } else {
        enumerate_optimal(instance, &ConstraintSet::empty(), budget)?
    };
    let den = optimum(&free, objective).expect("unconstrained optimum exists");
    let params = format!("tau={};objective={}", constraints.len(), objective.name());
    RatioReport::new("custom", params, int(num), int(den)).map(Some)
}

/// Price of temporal fairness on a family with constraints.
pub fn measure_family_potf(
    family: Family,
    objective: Objective,
    budget: &Budget,
) -> Result<Option<RatioReport>> {
    let f = gen_family(family)?;
    let Some(mut report) = measure_potf(&f.instance, &f.constraints, objective, budget)? else {
        return Ok(None);
    };
    report.family = family.name().to_string();
    report.params = family.to_string();
    report.bound = match (family, objective) {
        (Family::PotfMinSum { n }, Objective::MinSum) => Some(Rational::new(n as i64, 2)),
        (Family::PotfMinMax { n, tau }, Objective::MinMax) => {
            Some(Rational::new(tau.min(n) as i64, 2))
        }
        _ => None,
    };
    Ok(Some(report))
}

/// Online algorithms the harness can run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OnlineChoice {
    Greedy(Greedy),
    /// Uniform choice among the available projects.
    Uniform,
}

impl OnlineChoice {
    pub fn name(self) -> &'static str {
        match self {
            OnlineChoice::Greedy(g) => g.name(),
            OnlineChoice::Uniform => "uniform",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "greedy-minsum" => Ok(OnlineChoice::Greedy(Greedy::MinSum)),
            "greedy-minmax" => Ok(OnlineChoice::Greedy(Greedy::MinMax)),
            "uniform" => Ok(OnlineChoice::Uniform),
            other => Err(Error::validation(format!(
                "unknown online algorithm `{other}`"
            ))),
        }
    }

    fn run(self, instance: &Instance, rng: &mut Rng) -> Result<Outcome> {
        match self {
            OnlineChoice::Greedy(mut g) => run_online(instance, &mut g),
            OnlineChoice::Uniform => {
                let mut alg = FnAlgorithm(|revealed: &[Column], _: &OnlineState| {
                    revealed
                        .last()
                        .and_then(|c| c.available.iter().choose(rng))
                        .ok_or_else(|| Error::validation("timestep has no available project"))
                });
                run_online(instance, &mut alg)
            }
        }
    }
}

fn minmax_of(instance: &Instance, outcome: &Outcome) -> usize {
    Objective::MinMax.value(instance, outcome)
}

/// Competitive ratio with respect to Min-Max: the online run's value over
/// the offline optimum. Random-split instances and the uniform algorithm
/// are averaged over `repetitions`, repetition `r` drawing from
/// `split(seed, r)`; the ratio is then mean online over mean offline.
pub fn measure_cr(
    family: Family,
    algorithm: OnlineChoice,
    repetitions: u64,
    seed: u64,
    budget: &Budget,
) -> Result<RatioReport> {
    let randomized =
        matches!(family, Family::RandomSplit { .. }) || algorithm == OnlineChoice::Uniform;
    let reps = if randomized { repetitions.max(1) } else { 1 };
    let runs: Vec<Result<(usize, usize)>> = (0..reps)
        .into_par_iter()
        .map(|r| {
            let mut rng = split(seed, r);
            let instance = match family {
                Family::RandomSplit { k, .. } => {
                    let seq = SplitSequence::draw_from(k, seed, &mut rng)?;
                    super::families::random_split_instance(&seq)?
                }
                other => gen_family(other)?.instance,
            };
            let online = minmax_of(&instance, &algorithm.run(&instance, &mut rng)?);
            let offline = enumerate_optimal(&instance, &ConstraintSet::empty(), budget)?
                .min_max
                .expect("unconstrained instances are feasible")
                .value;
            Ok((online, offline))
        })
        .collect();
    let runs: Vec<(usize, usize)> = runs.into_iter().collect::<Result<_>>()?;
    let online: Vec<usize> = runs.iter().map(|r| r.0).collect();
    let num = Rational::new(online.iter().sum::<usize>() as i64, reps as i64);
    let den = Rational::new(runs.iter().map(|r| r.1).sum::<usize>() as i64, reps as i64);
    let params = match family {
        Family::RandomSplit { k, .. } => format!("k={k};seed={seed};reps={reps}"),
        other => other.to_string(),
    };
    let mut report = RatioReport::new(
        family.name(),
        format!("{params};alg={}", algorithm.name()),
        num,
        den,
    )?;
    report.bound = match family {
        Family::CrGreedyMinSum { k } => Some(int(k)),
        Family::CrGreedyMinMax { n } => Some(Rational::new(n as i64, 2)),
        Family::RandomSplit { k, .. } => Some(Rational::new(k as i64, 2)),
        _ => None,
    };
    if randomized {
        report.stats = Some(SampleStats::of(&online));
    }
    Ok(report)
}

#[derive(Debug, Clone, PartialEq)]
pub struct PoeReport {
    pub n: usize,
    pub equitable: Vec<Outcome>,
    /// Shared disutility of the first equitable outcome.
    pub common_disutility: usize,
    pub minsum: RatioReport,
    pub minmax: RatioReport,
    /// `(n-2)(n-1)`, the quoted lower bound on the equitable Min-Sum value.
    pub cited_minsum_bound: usize,
}

impl PoeReport {
    pub fn cited_bound_holds(&self) -> bool {
        self.minsum.numerator >= int(self.cited_minsum_bound)
    }
}

/// Price of equitability on the family: best equitable value over the
/// unconstrained optimum, for both objectives.
pub fn measure_poe(n: usize, budget: &Budget) -> Result<PoeReport> {
    let f = gen_family(Family::Poe { n })?;
    let inst = &f.instance;
    let equitable = equitable_outcomes(inst, budget)?;
    let best = |obj: Objective| equitable.iter().map(|o| obj.value(inst, o)).min();
    let (Some(eq_sum), Some(eq_max)) = (best(Objective::MinSum), best(Objective::MinMax)) else {
        return Err(Error::precondition(
            "family instance has no equitable outcome",
        ));
    };
    let free = enumerate_optimal(inst, &ConstraintSet::empty(), budget)?;
    let params = format!("n={n}");
    let minsum = RatioReport::new(
        "poe-minsum",
        params.clone(),
        int(eq_sum),
        int(free.min_sum.unwrap().value),
    )?
    .with_bound(int(n * (n - 2)));
    let minmax = RatioReport::new(
        "poe-minmax",
        params,
        int(eq_max),
        int(free.min_max.unwrap().value),
    )?
    .with_bound(int(n - 2));
    let common_disutility = crate::model::disutility(inst, &equitable[0], 0, inst.ell())?;
    Ok(PoeReport {
        n,
        equitable,
        common_disutility,
        minsum,
        minmax,
        cited_minsum_bound: (n - 2) * (n - 1),
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PropReport {
    pub n: usize,
    pub ell: usize,
    /// Min over outcomes of the max disutility.
    pub min_max: usize,
    /// `⌈ℓ(n-1)/n⌉`.
    pub bound: usize,
    /// Every agent's favourite constant outcome leaves her at 0.
    pub ideal_is_zero: bool,
}

impl PropReport {
    pub fn holds(&self) -> bool {
        self.ideal_is_zero && self.min_max >= self.bound
    }
}

pub fn prop_impossibility_check(n: usize, ell: usize, budget: &Budget) -> Result<PropReport> {
    let inst = gen_family(Family::PropImpossible { n, ell })?.instance;
    let min_max = enumerate_optimal(&inst, &ConstraintSet::empty(), budget)?
        .min_max
        .expect("unconstrained instances are feasible")
        .value;
    let ideal_is_zero = (0..n).all(|i| {
        let own = Outcome::new(vec![i; ell]);
        crate::model::disutility(&inst, &own, i, ell) == Ok(0)
    });
    Ok(PropReport {
        n,
        ell,
        min_max,
        bound: (ell * (n - 1)).div_ceil(n),
        ideal_is_zero,
    })
}

/// One instance of a random PoTF sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepCase {
    pub attempt: u64,
    pub instance: Instance,
    pub constraints: ConstraintSet,
    pub minsum: Rational,
    pub minmax: Rational,
}

impl SweepCase {
    pub fn tau(&self) -> usize {
        self.constraints.len()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepReport {
    pub seed: u64,
    pub attempts: u64,
    pub infeasible: u64,
    pub cases: Vec<SweepCase>,
}

impl SweepReport {
    /// Cases whose Min-Sum ratio exceeds `n`.
    pub fn minsum_violations(&self) -> Vec<&SweepCase> {
        self.cases
            .iter()
            .filter(|c| c.minsum > int(c.instance.n()))
            .collect()
    }

    /// Cases whose Min-Max ratio exceeds `min(τ, n)`.
    pub fn minmax_violations(&self) -> Vec<&SweepCase> {
        self.cases
            .iter()
            .filter(|c| c.minmax > int(c.tau().min(c.instance.n())))
            .collect()
    }

    /// Cases whose Min-Max ratio exceeds `min(τ + 1, n)`.
    pub fn minmax_relaxed_violations(&self) -> Vec<&SweepCase> {
        self.cases
            .iter()
            .filter(|c| c.minmax > int((c.tau() + 1).min(c.instance.n())))
            .collect()
    }
}

/// Draws random instances (n, m ≤ 3, ℓ ≤ 4) with one or two checkpoints
/// until `count` feasible ones are measured. Attempt `a` uses
/// `split(seed, a)`; draws without checkpoints are redrawn.
pub fn potf_sweep(count: usize, seed: u64, budget: &Budget) -> Result<SweepReport> {
    let mut report = SweepReport {
        seed,
        attempts: 0,
        infeasible: 0,
        cases: Vec::with_capacity(count),
    };
    while report.cases.len() < count {
        let attempt = report.attempts;
        report.attempts += 1;
        if report.attempts > 50 * count as u64 + 50 {
            return Err(Error::precondition(
                "sweep could not find enough feasible instances",
            ));
        }
        let mut rng = split(seed, attempt);
        let instance = random_small_instance(&mut rng, 3, 3, 4);
        let constraints = random_constraints(&mut rng, instance.ell(), 2);
        if constraints.is_empty() {
            continue;
        }
        let constrained = enumerate_optimal(&instance, &constraints, budget)?;
        if !constrained.feasible {
            report.infeasible += 1;
            continue;
        }
        let free = enumerate_optimal(&instance, &ConstraintSet::empty(), budget)?;
        let r = |obj| {
            ratio_of(
                int(optimum(&constrained, obj).unwrap()),
                int(optimum(&free, obj).unwrap()),
            )
        };
        report.cases.push(SweepCase {
            attempt,
            minsum: r(Objective::MinSum)?,
            minmax: r(Objective::MinMax)?,
            instance,
            constraints,
        });
    }
    Ok(report)
}
