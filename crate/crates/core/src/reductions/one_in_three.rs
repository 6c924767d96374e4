//! 1-in-3-SAT to the existence of an equitable outcome.
//!
//! One agent per clause and one per negated clause, one timestep per
//! variable (p1 true, p2 false), and a final single-project timestep that
//! every negated-clause agent disapproves. With `k` true literals a clause
//! agent suffers `3 - k` and its partner `k + 1`, so all agents are equal
//! exactly when every clause has one true literal.

use crate::error::{Error, Result};
use crate::model::{Instance, InstanceBuilder, Outcome};

use super::cnf::CnfFormula;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OneInThreeReduction {
    pub instance: Instance,
    /// Variable (1-based) at each variable timestep.
    pub variable_timesteps: Vec<usize>,
    pub vars: usize,
}

impl OneInThreeReduction {
    pub fn decode(&self, outcome: &Outcome) -> Vec<bool> {
        let mut a = vec![false; self.vars];
        for (k, &v) in self.variable_timesteps.iter().enumerate() {
            a[v - 1] = outcome.selections()[k] == 0;
        }
        a
    }

    pub fn encode(&self, assignment: &[bool]) -> Outcome {
        let mut sel: Vec<usize> = self
            .variable_timesteps
            .iter()
            .map(|&v| if assignment[v - 1] { 0 } else { 1 })
            .collect();
        sel.push(0);
        Outcome::new(sel)
    }
}

pub fn reduce_1in3(formula: &CnfFormula) -> Result<OneInThreeReduction> {
    formula.check_three_literal()?;
    let m = formula.clauses.len();
    let mut vars: Vec<usize> = formula
        .clauses
        .iter()
        .flatten()
        .map(|l| l.unsigned_abs() as usize)
        .collect();
    vars.sort_unstable();
    vars.dedup();
    let ell = vars.len() + 1;
    let mut b = InstanceBuilder::new(2 * m, 2, ell);
    for (k, &v) in vars.iter().enumerate() {
        let (pos, neg) = (v as i32, -(v as i32));
        for (j, c) in formula.clauses.iter().enumerate() {
            if c.contains(&neg) {
                b.disapprove(j, k, 0).disapprove(m + j, k, 1);
            }
            if c.contains(&pos) {
                b.disapprove(j, k, 1).disapprove(m + j, k, 0);
            }
        }
    }
    b.restrict(ell - 1, [0]);
    for j in 0..m {
        b.disapprove(m + j, ell - 1, 0);
    }
    if vars.is_empty() {
        return Err(Error::validation("formula mentions no variables"));
    }
    Ok(OneInThreeReduction {
        instance: b.build()?,
        variable_timesteps: vars,
        vars: formula.vars,
    })
}
