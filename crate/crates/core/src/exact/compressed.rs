//! Type-compressed integer feasibility program.
//!
//! Each project copy is typed by the set of agents it spares; each
//! constrained timestep is typed by the set of project types it offers and
//! the checkpoint group it falls in. The program then only has to decide
//! how many timesteps of each timestep type pick each project type.

use std::collections::BTreeMap;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::model::{ConstraintSet, Instance, Outcome};

/// Bit `i` set ⇔ agent `i` does not disapprove the project.
pub type AgentMask = u64;

/// A timestep type: the project types present and the checkpoint group.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TimestepType {
    /// Sorted, distinct project types.
    pub types: Vec<AgentMask>,
    /// 0-based index of the checkpoint closing this timestep's group.
    pub group: usize,
}

/// The integer program: for every timestep type `R` and every project type
/// `r ∈ R` a variable `x_{R,r} ≥ 0` with
///
/// 1. `Σ_{r∈R} x_{R,r} ≥ z_R` for each timestep type, and
/// 2. `Σ_{R in groups ≤ g} Σ_{r ∌ i} x_{R,r} ≤ λ_g` for each agent `i` and
///    checkpoint `g`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompressedProgram {
    pub n: usize,
    /// `λ_g` per checkpoint.
    pub lambdas: Vec<usize>,
    /// All project types `Q` occurring at constrained timesteps.
    pub project_types: Vec<AgentMask>,
    /// Timestep types ordered by group.
    pub timestep_types: Vec<TimestepType>,
    /// `z_R`, aligned with `timestep_types`.
    pub counts: Vec<usize>,
    /// Variables in branching order: `(timestep type index, project type)`.
    pub variables: Vec<(usize, AgentMask)>,
}

impl CompressedProgram {
    /// Types agent `i` is charged for (`Q_i`).
    pub fn disapproved_types(&self, agent: usize) -> Vec<AgentMask> {
        self.project_types
            .iter()
            .copied()
            .filter(|&r| r & (1 << agent) == 0)
            .collect()
    }

    /// Checks an integral assignment (aligned with `variables`) against
    /// every row of the program.
    pub fn is_feasible_assignment(&self, x: &[usize]) -> bool {
        if x.len() != self.variables.len() {
            return false;
        }
        let mut covered = vec![0usize; self.timestep_types.len()];
        for (&(j, _), &v) in self.variables.iter().zip(x) {
            covered[j] += v;
        }
        if covered.iter().zip(&self.counts).any(|(c, z)| c < z) {
            return false;
        }
        for (g, &lambda) in self.lambdas.iter().enumerate() {
            for i in 0..self.n {
                let load: usize = self
                    .variables
                    .iter()
                    .zip(x)
                    .filter(|&(&(j, r), _)| self.timestep_types[j].group <= g && r & (1 << i) == 0)
                    .map(|(_, &v)| v)
                    .sum();
                if load > lambda {
                    return false;
                }
            }
        }
        true
    }
}

/// `(timestep, group)` for every timestep up to the last checkpoint.
fn groups(constraints: &ConstraintSet) -> Vec<(usize, usize)> {
    let pairs = constraints.pairs();
    let horizon = constraints.last().map_or(0, |c| c.t);
    let mut group = 0;
    (0..horizon)
        .map(|k| {
            while pairs[group].t < k + 1 {
                group += 1;
            }
            (k, group)
        })
        .collect()
}

/// Spared-agent mask of `project` at `k`.
fn project_type(instance: &Instance, k: usize, project: usize) -> AgentMask {
    let all = (1u64 << instance.n()) - 1;
    all & !instance
        .disapprovers(k, project)
        .fold(0u64, |acc, i| acc | (1 << i))
}

fn timestep_type(instance: &Instance, k: usize, group: usize) -> TimestepType {
    let mut types: Vec<AgentMask> = instance
        .available(k)
        .iter()
        .map(|p| project_type(instance, k, p))
        .collect();
    types.sort_unstable();
    types.dedup();
    TimestepType { types, group }
}

/// Builds the compressed program. Timesteps after the last checkpoint are
/// dropped (nothing constrains them).
pub fn compress_types(
    instance: &Instance,
    constraints: &ConstraintSet,
    budget: &Budget,
) -> Result<CompressedProgram> {
    constraints.validate_for(instance)?;
    let n = instance.n();
    if n >= 64 || (1u64 << n) > budget.types {
        return Err(Error::BudgetExceeded {
            resource: "project types",
            limit: budget.types,
        });
    }
    let mut z: BTreeMap<TimestepType, usize> = BTreeMap::new();
    for (k, group) in groups(constraints) {
        *z.entry(timestep_type(instance, k, group)).or_insert(0) += 1;
    }
    let mut project_types: Vec<AgentMask> =
        z.keys().flat_map(|t| t.types.iter().copied()).collect();
    project_types.sort_unstable();
    project_types.dedup();
    // blocks must run checkpoint by checkpoint for the partial-load check
    let mut grouped: Vec<(TimestepType, usize)> = z.into_iter().collect();
    grouped.sort_by_key(|(t, _)| t.group);
    let (timestep_types, counts): (Vec<_>, Vec<_>) = grouped.into_iter().unzip();
    let variables = timestep_types
        .iter()
        .enumerate()
        .flat_map(|(j, t)| t.types.iter().map(move |&r| (j, r)))
        .collect();
    Ok(CompressedProgram {
        n,
        lambdas: constraints.pairs().iter().map(|c| c.lambda).collect(),
        project_types,
        timestep_types,
        counts,
        variables,
    })
}

struct Search<'a> {
    program: &'a CompressedProgram,
    /// Per timestep type: indices into `variables` of its undominated types.
    blocks: Vec<Vec<usize>>,
    x: Vec<usize>,
    loads: Vec<usize>,
    nodes: u64,
    limit: u64,
}

impl Search<'_> {
    fn charge(&mut self, r: AgentMask, amount: usize, add: bool) {
        for (i, load) in self.loads.iter_mut().enumerate() {
            if r & (1 << i) == 0 {
                if add {
                    *load += amount;
                } else {
                    *load -= amount;
                }
            }
        }
    }

    /// Assigns variable `pos` of block `j` with `remaining` timesteps of
    /// that type still to cover.
    fn branch(&mut self, j: usize, pos: usize, remaining: usize) -> Result<bool> {
        self.nodes += 1;
        if self.nodes > self.limit {
            return Err(Error::BudgetExceeded {
                resource: "branch-and-bound nodes",
                limit: self.limit,
            });
        }
        if j == self.blocks.len() {
            return Ok(true);
        }
        let block = &self.blocks[j];
        let lambda = self.program.lambdas[self.program.timestep_types[j].group];
        let var = block[pos];
        let r = self.program.variables[var].1;
        let last = pos + 1 == block.len();
        let choices: Vec<usize> = if last {
            vec![remaining]
        } else {
            (0..=remaining).rev().collect()
        };
        for c in choices {
            self.charge(r, c, true);
            let ok = self.loads.iter().all(|&l| l <= lambda);
            if ok {
                self.x[var] = c;
                let found = if last {
                    let nj = j + 1;
                    let nz = self.program.counts.get(nj).copied().unwrap_or(0);
                    self.branch(nj, 0, nz)?
                } else {
                    self.branch(j, pos + 1, remaining - c)?
                };
                if found {
                    return Ok(true);
                }
                self.x[var] = 0;
            }
            self.charge(r, c, false);
        }
        Ok(false)
    }
}

/// Decides the compressed program by branch and bound over the variables
/// in order. Partial loads must stay within the bound of the group being
/// filled; project types spared-set-dominated by another type of the same
/// timestep type are fixed to zero. Returns a feasible assignment aligned
/// with `program.variables`.
pub fn solve_compressed(
    program: &CompressedProgram,
    budget: &Budget,
) -> Result<Option<Vec<usize>>> {
    let mut blocks: Vec<Vec<usize>> = vec![Vec::new(); program.timestep_types.len()];
    for (v, &(j, r)) in program.variables.iter().enumerate() {
        let dominated = program.timestep_types[j]
            .types
            .iter()
            .any(|&other| other != r && other & r == r);
        if !dominated {
            blocks[j].push(v);
        }
    }
    let mut search = Search {
        program,
        blocks,
        x: vec![0; program.variables.len()],
        loads: vec![0; program.n],
        nodes: 0,
        limit: budget.search_nodes,
    };
    let z0 = program.counts.first().copied().unwrap_or(0);
    if search.branch(0, 0, z0)? {
        debug_assert!(program.is_feasible_assignment(&search.x));
        Ok(Some(search.x))
    } else {
        Ok(None)
    }
}

/// Turns a feasible assignment back into an outcome: each constrained
/// timestep takes, in order, a project of a type its timestep type still
/// has copies of; later timesteps take a free project or the lowest
/// available one.
pub fn decode_assignment(
    instance: &Instance,
    constraints: &ConstraintSet,
    program: &CompressedProgram,
    x: &[usize],
) -> Result<Outcome> {
    let mut left = x.to_vec();
    let mut selections: Vec<usize> = (0..instance.ell())
        .map(|k| {
            instance
                .free_project(k)
                .or_else(|| instance.available(k).iter().next())
                .expect("availability is nonempty")
        })
        .collect();
    for (k, group) in groups(constraints) {
        let tt = timestep_type(instance, k, group);
        let j = program
            .timestep_types
            .iter()
            .position(|t| *t == tt)
            .ok_or_else(|| Error::validation("program does not match the instance"))?;
        let var = (0..program.variables.len())
            .find(|&v| program.variables[v].0 == j && left[v] > 0)
            .ok_or_else(|| Error::validation("assignment does not cover every timestep"))?;
        left[var] -= 1;
        let r = program.variables[var].1;
        selections[k] = instance
            .available(k)
            .iter()
            .find(|&p| project_type(instance, k, p) == r)
            .expect("type occurs at this timestep");
    }
    Outcome::for_instance(instance, selections)
}

/// Compresses, solves and decodes in one step.
pub fn solve_ilp(
    instance: &Instance,
    constraints: &ConstraintSet,
    budget: &Budget,
) -> Result<Option<Outcome>> {
    let program = compress_types(instance, constraints, budget)?;
    match solve_compressed(&program, budget)? {
        None => Ok(None),
        Some(x) => decode_assignment(instance, constraints, &program, &x).map(Some),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::InstanceBuilder;

    fn thm7(n: usize) -> Instance {
        let mut b = InstanceBuilder::new(n, 2, 2);
        for k in 0..2 {
            b.disapprove(0, k, 0);
            for i in 1..n {
                b.disapprove(i, k, 1);
            }
        }
        b.build().unwrap()
    }

    #[test]
    fn identical_timesteps_share_one_type() {
        let inst = thm7(4);
        let prog = compress_types(&inst, &ConstraintSet::single(2, 1), &Budget::default()).unwrap();
        assert_eq!(prog.timestep_types.len(), 1);
        assert_eq!(prog.counts, vec![2]);
        assert!(solve_compressed(&prog, &Budget::default())
            .unwrap()
            .is_some());
        let tight =
            compress_types(&inst, &ConstraintSet::single(2, 0), &Budget::default()).unwrap();
        assert_eq!(solve_compressed(&tight, &Budget::default()).unwrap(), None);
    }

    #[test]
    fn free_project_has_full_type() {
        let mut b = InstanceBuilder::new(3, 2, 1);
        b.disapprove(0, 0, 0);
        let prog = compress_types(
            &b.build().unwrap(),
            &ConstraintSet::single(1, 0),
            &Budget::default(),
        )
        .unwrap();
        assert!(prog.timestep_types[0].types.contains(&0b111));
        assert_eq!(prog.disapproved_types(0), vec![0b110]);
    }

    #[test]
    fn no_constraints_is_vacuous() {
        let prog = compress_types(&thm7(3), &ConstraintSet::empty(), &Budget::default()).unwrap();
        assert!(prog.variables.is_empty());
        assert_eq!(
            solve_compressed(&prog, &Budget::default()).unwrap(),
            Some(vec![])
        );
    }

    #[test]
    fn assignment_checker_rejects_overload() {
        let prog =
            compress_types(&thm7(4), &ConstraintSet::single(2, 1), &Budget::default()).unwrap();
        // both timesteps on the type agent 1 disapproves
        let mut x = vec![0; prog.variables.len()];
        let v = prog
            .variables
            .iter()
            .position(|&(_, r)| r & 1 == 0)
            .unwrap();
        x[v] = 2;
        assert!(!prog.is_feasible_assignment(&x));
    }

    #[test]
    fn type_budget_refusal() {
        let inst = InstanceBuilder::new(13, 1, 1).build().unwrap();
        assert!(matches!(
            compress_types(&inst, &ConstraintSet::single(1, 0), &Budget::default()),
            Err(Error::BudgetExceeded { .. })
        ));
    }
}
