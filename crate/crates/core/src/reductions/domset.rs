//! Dominating Set to the Min-Max decision problem with one checkpoint.
//!
//! Agents and projects are vertices and there are `κ` timesteps; agent `i`
//! disapproves every project outside its closed neighbourhood. A dominating
//! set of size at most `κ` exists iff some outcome keeps every agent at
//! disutility at most `κ - 1`.

use crate::error::{Error, Result};
use crate::model::{ConstraintSet, Instance, InstanceBuilder, Outcome};

use super::graph::Graph;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DomsetReduction {
    pub instance: Instance,
    pub constraints: ConstraintSet,
    pub kappa: usize,
}

impl DomsetReduction {
    /// Distinct selected vertices, ascending.
    pub fn decode(&self, outcome: &Outcome) -> Vec<usize> {
        let mut d = outcome.selections().to_vec();
        d.sort_unstable();
        d.dedup();
        d
    }

    /// Selects the set's vertices in order, padding with the first vertex.
    pub fn encode(&self, set: &[usize]) -> Result<Outcome> {
        if set.len() > self.kappa {
            return Err(Error::validation("set larger than kappa"));
        }
        let mut sel = set.to_vec();
        sel.resize(self.kappa, 0);
        Ok(Outcome::new(sel))
    }
}

pub fn reduce_domset(graph: &Graph, kappa: usize) -> Result<DomsetReduction> {
    if kappa == 0 {
        return Err(Error::validation("kappa must be at least 1"));
    }
    let n = graph.vertices;
    let mut b = InstanceBuilder::new(n, n, kappa);
    for i in 0..n {
        for j in (0..n).filter(|&j| j != i && !graph.adjacent(i, j)) {
            for k in 0..kappa {
                b.disapprove(i, k, j);
            }
        }
    }
    Ok(DomsetReduction {
        instance: b.build()?,
        constraints: ConstraintSet::single(kappa, kappa - 1),
        kappa,
    })
}
