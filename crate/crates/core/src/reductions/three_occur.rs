//! 3-Occur-3SAT to the constrained Min-Max decision problem.
//!
//! Unit clauses are propagated to a fixpoint first. Each remaining clause
//! becomes an agent; each remaining variable a timestep offering p1 (true)
//! and p2 (false); each two-literal clause an extra timestep whose only
//! project its agent disapproves. The formula is satisfiable iff some
//! outcome keeps every agent at disutility at most 2.

use crate::error::{Error, Result};
use crate::model::{ConstraintSet, Instance, InstanceBuilder, Outcome};

use super::cnf::CnfFormula;

/// Outcome of unit propagation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Propagated {
    /// Fixed assignments (1-based variables at index `v-1`) and the
    /// residual clauses, none of them unit.
    Reduced {
        fixed: Vec<Option<bool>>,
        clauses: Vec<Vec<i32>>,
    },
    /// Propagation derived an empty clause.
    Contradiction,
}

pub fn propagate_units(formula: &CnfFormula) -> Propagated {
    let mut fixed: Vec<Option<bool>> = vec![None; formula.vars];
    let mut clauses = formula.clauses.clone();
    while let Some(unit) = clauses.iter().find(|c| c.len() == 1).map(|c| c[0]) {
        fixed[unit.unsigned_abs() as usize - 1] = Some(unit > 0);
        let mut next = Vec::with_capacity(clauses.len());
        for c in clauses {
            if c.contains(&unit) {
                continue;
            }
            let rest: Vec<i32> = c.into_iter().filter(|&l| l != -unit).collect();
            if rest.is_empty() {
                return Propagated::Contradiction;
            }
            next.push(rest);
        }
        clauses = next;
    }
    Propagated::Reduced { fixed, clauses }
}

/// A reduction result with what is needed to translate witnesses.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThreeOccurReduction {
    pub instance: Instance,
    pub constraints: ConstraintSet,
    /// Variables fixed by propagation.
    pub fixed: Vec<Option<bool>>,
    /// Variable (1-based) encoded at each variable timestep, in order.
    pub variable_timesteps: Vec<usize>,
    /// Clause agents (residual clauses, in order).
    pub clauses: Vec<Vec<i32>>,
    /// Set when propagation found a contradiction.
    pub contradiction: bool,
}

impl ThreeOccurReduction {
    /// Reads an assignment off an outcome: p1 at a variable timestep means
    /// true; fixed variables keep their value; the rest are false.
    pub fn decode(&self, outcome: &Outcome) -> Vec<bool> {
        let mut a: Vec<bool> = self.fixed.iter().map(|f| f.unwrap_or(false)).collect();
        for (k, &v) in self.variable_timesteps.iter().enumerate() {
            a[v - 1] = outcome.selections()[k] == 0;
        }
        a
    }

    /// The outcome encoding an assignment.
    pub fn encode(&self, assignment: &[bool]) -> Outcome {
        let mut sel: Vec<usize> = self
            .variable_timesteps
            .iter()
            .map(|&v| if assignment[v - 1] { 0 } else { 1 })
            .collect();
        sel.resize(self.instance.ell(), 0);
        Outcome::new(sel)
    }
}

pub fn reduce_3occur(formula: &CnfFormula) -> Result<ThreeOccurReduction> {
    formula.check_three_occur()?;
    if formula.clauses.iter().any(Vec::is_empty) {
        return Err(Error::validation("empty clause"));
    }
    let (fixed, clauses) = match propagate_units(formula) {
        Propagated::Contradiction => {
            // one agent disapproving both projects, bound 0
            let mut b = InstanceBuilder::new(1, 2, 1);
            b.disapprove(0, 0, 0).disapprove(0, 0, 1);
            return Ok(ThreeOccurReduction {
                instance: b.build()?,
                constraints: ConstraintSet::single(1, 0),
                fixed: vec![None; formula.vars],
                variable_timesteps: Vec::new(),
                clauses: Vec::new(),
                contradiction: true,
            });
        }
        Propagated::Reduced { fixed, clauses } => (fixed, clauses),
    };
    if clauses.is_empty() {
        let b = InstanceBuilder::new(1, 2, 1);
        return Ok(ThreeOccurReduction {
            instance: b.build()?,
            constraints: ConstraintSet::single(1, 0),
            fixed,
            variable_timesteps: Vec::new(),
            clauses,
            contradiction: false,
        });
    }
    let mut vars: Vec<usize> = clauses
        .iter()
        .flatten()
        .map(|l| l.unsigned_abs() as usize)
        .collect();
    vars.sort_unstable();
    vars.dedup();
    let short: Vec<usize> = (0..clauses.len())
        .filter(|&j| clauses[j].len() == 2)
        .collect();
    let ell = vars.len() + short.len();
    let mut b = InstanceBuilder::new(clauses.len(), 2, ell);
    for (k, &v) in vars.iter().enumerate() {
        for (j, c) in clauses.iter().enumerate() {
            if c.contains(&-(v as i32)) {
                b.disapprove(j, k, 0);
            }
            if c.contains(&(v as i32)) {
                b.disapprove(j, k, 1);
            }
        }
    }
    for (s, &j) in short.iter().enumerate() {
        let k = vars.len() + s;
        b.restrict(k, [0]).disapprove(j, k, 0);
    }
    Ok(ThreeOccurReduction {
        instance: b.build()?,
        constraints: ConstraintSet::single(ell, 2),
        fixed,
        variable_timesteps: vars,
        clauses,
        contradiction: false,
    })
}
