//! LP relaxation of Min-Max and vertex rounding.
//!
//! Timesteps with an undisapproved available project are resolved up
//! front; the relaxation covers the remaining ℓ⁺ timesteps. An optimal
//! vertex has at most `n` timesteps carrying two or more positive weights,
//! so picking the heaviest project everywhere costs at most
//! `min(m, 1 + n²/ℓ⁺)` times the LP value.

pub mod simplex;

use num::{BigRational, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::model::{disutilities, Instance, Outcome};
use simplex::{rank, solve, StandardForm, Q};

/// The relaxation for one instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LpModel {
    pub n: usize,
    pub m: usize,
    /// Timesteps where every available project has a disapprover.
    pub timesteps: Vec<usize>,
    /// `(project, timestep)` of each weight variable, grouped by timestep,
    /// projects ascending.
    pub variables: Vec<(usize, usize)>,
    /// Per surviving timestep, indices into `variables`.
    pub coverage_rows: Vec<Vec<usize>>,
    /// Per agent, indices of the variables she disapproves.
    pub agent_rows: Vec<Vec<usize>>,
    /// Full-length selections; `Some` for resolved timesteps.
    pub resolved: Vec<Option<usize>>,
}

impl LpModel {
    pub fn is_empty(&self) -> bool {
        self.timesteps.is_empty()
    }

    /// Weight variables plus η.
    pub fn variable_count(&self) -> usize {
        self.variables.len() + 1
    }

    /// Coverage rows plus agent rows.
    pub fn row_count(&self) -> usize {
        self.coverage_rows.len() + self.agent_rows.len()
    }

    /// Whether `(weights, eta)` satisfies every row and nonnegativity.
    pub fn is_feasible(&self, weights: &[Q], eta: &Q) -> bool {
        weights.len() == self.variables.len()
            && !weights.iter().any(Signed::is_negative)
            && self
                .coverage_rows
                .iter()
                .all(|row| row.iter().map(|&v| &weights[v]).sum::<Q>() >= Q::one())
            && self
                .agent_rows
                .iter()
                .all(|row| row.iter().map(|&v| &weights[v]).sum::<Q>() <= *eta)
    }

    /// Standard form: columns are weights, η, one surplus per coverage row,
    /// one slack per agent row.
    fn standard_form(&self) -> StandardForm {
        let nv = self.variables.len();
        let eta = nv;
        let cols = nv + 1 + self.coverage_rows.len() + self.agent_rows.len();
        let mut a = Vec::new();
        let mut b = Vec::new();
        for (r, row) in self.coverage_rows.iter().enumerate() {
            let mut line = vec![Q::zero(); cols];
            for &v in row {
                line[v] = Q::one();
            }
            line[nv + 1 + r] = -Q::one();
            a.push(line);
            b.push(Q::one());
        }
        for (i, row) in self.agent_rows.iter().enumerate() {
            let mut line = vec![Q::zero(); cols];
            for &v in row {
                line[v] = Q::one();
            }
            line[eta] = -Q::one();
            line[nv + 1 + self.coverage_rows.len() + i] = Q::one();
            a.push(line);
            b.push(Q::zero());
        }
        let mut cost = vec![Q::zero(); cols];
        cost[eta] = Q::one();
        StandardForm { a, b, cost }
    }
}

/// Builds the relaxation, resolving every timestep that has an available
/// project nobody disapproves to the lowest such project.
pub fn build_lp(instance: &Instance) -> LpModel {
    let mut model = LpModel {
        n: instance.n(),
        m: instance.m(),
        timesteps: Vec::new(),
        variables: Vec::new(),
        coverage_rows: Vec::new(),
        agent_rows: vec![Vec::new(); instance.n()],
        resolved: vec![None; instance.ell()],
    };
    for k in 0..instance.ell() {
        if let Some(p) = instance.free_project(k) {
            model.resolved[k] = Some(p);
            continue;
        }
        model.timesteps.push(k);
        let mut row = Vec::new();
        for p in instance.available(k).iter() {
            let v = model.variables.len();
            model.variables.push((p, k));
            row.push(v);
            for i in instance.disapprovers(k, p) {
                model.agent_rows[i].push(v);
            }
        }
        model.coverage_rows.push(row);
    }
    model
}

/// An exact optimum of the relaxation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LpSolution {
    /// Aligned with `LpModel::variables`.
    pub weights: Vec<BigRational>,
    pub eta: BigRational,
    /// The positive variables (slacks included) have linearly independent
    /// columns, certified by exact elimination.
    pub is_vertex: bool,
}

/// Solves the relaxation to an optimal vertex by exact two-phase simplex.
pub fn solve_lp_vertex(model: &LpModel) -> Result<LpSolution> {
    if model.is_empty() {
        return Err(Error::precondition("LP model has no timesteps to cover"));
    }
    let sf = model.standard_form();
    let basic = solve(&sf)?.ok_or_else(|| Error::precondition("LP relaxation is infeasible"))?;
    let support: Vec<Vec<Q>> = (0..sf.cost.len())
        .filter(|&j| basic.x[j].is_positive())
        .map(|j| sf.a.iter().map(|row| row[j].clone()).collect())
        .collect();
    let is_vertex = rank(&support) == support.len();
    let nv = model.variables.len();
    Ok(LpSolution {
        weights: basic.x[..nv].to_vec(),
        eta: basic.x[nv].clone(),
        is_vertex,
    })
}

/// Result of rounding a vertex solution.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rounding {
    pub outcome: Outcome,
    /// LP value; 0 when no timestep survives.
    pub eta: BigRational,
    /// Max disutility of `outcome`.
    pub achieved: usize,
    /// `min(m, 1 + n²/ℓ⁺)`, or 1 when ℓ⁺ = 0.
    pub factor: BigRational,
    /// `factor · eta`.
    pub bound: BigRational,
    /// Surviving timesteps with at least two positive weights.
    pub fractional: Vec<usize>,
}

/// `min(m, 1 + n²/ℓ⁺)`.
pub fn approximation_factor(n: usize, m: usize, ell_plus: usize) -> BigRational {
    if ell_plus == 0 {
        return Q::one();
    }
    let m = Q::from_integer(m.into());
    let alt = Q::one() + Q::new((n * n).into(), ell_plus.into());
    if m < alt {
        m
    } else {
        alt
    }
}

/// Picks the heaviest project at each surviving timestep (ties to the
/// lowest index) and merges with the resolved timesteps.
pub fn round_solution(
    instance: &Instance,
    model: &LpModel,
    solution: &LpSolution,
) -> Result<Rounding> {
    if !solution.is_vertex {
        return Err(Error::precondition("rounding needs a vertex solution"));
    }
    if solution.weights.len() != model.variables.len() {
        return Err(Error::validation("solution does not match the model"));
    }
    let mut selections: Vec<usize> = model.resolved.iter().map(|s| s.unwrap_or(0)).collect();
    let mut fractional = Vec::new();
    for (row, &k) in model.coverage_rows.iter().zip(&model.timesteps) {
        let mut best = row[0];
        for &v in &row[1..] {
            if solution.weights[v] > solution.weights[best] {
                best = v;
            }
        }
        selections[k] = model.variables[best].0;
        if row
            .iter()
            .filter(|&&v| solution.weights[v].is_positive())
            .count()
            >= 2
        {
            fractional.push(k);
        }
    }
    let outcome = Outcome::for_instance(instance, selections)?;
    let achieved = disutilities(instance, &outcome, instance.ell())
        .into_iter()
        .max()
        .unwrap_or(0);
    let factor = approximation_factor(model.n, model.m, model.timesteps.len());
    let bound = &factor * &solution.eta;
    Ok(Rounding {
        outcome,
        eta: solution.eta.clone(),
        achieved,
        factor,
        bound,
        fractional,
    })
}

/// Builds, solves and rounds. With ℓ⁺ = 0 the resolved outcome is returned
/// directly with value 0.
pub fn lp_round(instance: &Instance) -> Result<Rounding> {
    let model = build_lp(instance);
    if model.is_empty() {
        let selections = model
            .resolved
            .iter()
            .map(|s| s.expect("all timesteps resolved"))
            .collect();
        return Ok(Rounding {
            outcome: Outcome::new(selections),
            eta: Q::zero(),
            achieved: 0,
            factor: Q::one(),
            bound: Q::zero(),
            fractional: Vec::new(),
        });
    }
    let solution = solve_lp_vertex(&model)?;
    round_solution(instance, &model, &solution)
}

/// Lossy conversion for display.
pub fn to_f64(q: &BigRational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}
