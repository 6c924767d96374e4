use crate::error::{Error, Result};
use crate::model::{gamma, ConstraintSet, Instance, Outcome};

/// Bipartite graph between `(agent, level)` pairs and the timesteps left
/// unresolved after free choices are made.
///
/// `(i, λ)` is adjacent to timestep `k` iff agent `i` disapproves some
/// available project at `k` and no checkpoint `(t', λ')` with `t' ≥ k` has
/// `λ' < λ`. A matching saturating the timesteps assigns every timestep
/// to the agent who will bear it, at a disutility level the constraints
/// allow.
#[derive(Debug, Clone)]
pub struct MatchingGraph {
    n: usize,
    levels: usize,
    /// Timesteps (0-based) that are right vertices.
    timesteps: Vec<usize>,
    /// For each right vertex, adjacent left ids `agent * levels + (λ - 1)`.
    adj: Vec<Vec<usize>>,
    /// Selection fixed before the graph was built, per timestep.
    resolved: Vec<Option<usize>>,
}

impl MatchingGraph {
    /// Resolves free timesteps (some available project with no
    /// disapprover) and timesteps after the last checkpoint, then builds
    /// the graph over the rest.
    pub fn build(instance: &Instance, constraints: &ConstraintSet) -> Result<Self> {
        constraints.validate_for(instance)?;
        let g = gamma(instance);
        if g > 1 {
            return Err(Error::precondition(format!(
                "the matching algorithm needs gamma <= 1 (got {g}); use the DP or ILP solver"
            )));
        }
        let levels = constraints.last().map_or(0, |c| c.lambda);
        let mut resolved = vec![None; instance.ell()];
        let mut timesteps = Vec::new();
        let mut adj = Vec::new();
        for (k, slot) in resolved.iter_mut().enumerate() {
            let cap = match constraints.next_bound(k + 1) {
                None => {
                    // unconstrained tail: any choice works
                    *slot = instance.available(k).iter().next();
                    continue;
                }
                Some(cap) => cap,
            };
            if let Some(p) = instance.free_project(k) {
                *slot = Some(p);
                continue;
            }
            let mut edges = Vec::new();
            for i in 0..instance.n() {
                let hits = !instance
                    .disapproval_set(i, k)
                    .intersection(instance.available(k))
                    .is_empty();
                if hits {
                    edges.extend((1..=cap.min(levels)).map(|lambda| i * levels + lambda - 1));
                }
            }
            timesteps.push(k);
            adj.push(edges);
        }
        Ok(MatchingGraph {
            n: instance.n(),
            levels,
            timesteps,
            adj,
            resolved,
        })
    }

    /// Number of left vertices `n · λ_τ`.
    pub fn left_count(&self) -> usize {
        self.n * self.levels
    }

    pub fn levels(&self) -> usize {
        self.levels
    }

    /// The unresolved timesteps forming the right side.
    pub fn timesteps(&self) -> &[usize] {
        &self.timesteps
    }

    pub fn has_edge(&self, agent: usize, level: usize, k: usize) -> bool {
        if level == 0 || level > self.levels {
            return false;
        }
        let id = agent * self.levels + level - 1;
        self.timesteps
            .iter()
            .position(|&t| t == k)
            .is_some_and(|r| self.adj[r].contains(&id))
    }

    /// Maximum matching by augmenting paths (Kuhn). Returns, for every
    /// right vertex, the matched left id.
    pub fn maximum_matching(&self) -> Vec<Option<usize>> {
        let mut left_match: Vec<Option<usize>> = vec![None; self.left_count()];
        let mut right_match: Vec<Option<usize>> = vec![None; self.timesteps.len()];
        for r in 0..self.timesteps.len() {
            let mut seen = vec![false; self.left_count()];
            self.augment(r, &mut seen, &mut left_match, &mut right_match);
        }
        right_match
    }

    fn augment(
        &self,
        r: usize,
        seen: &mut [bool],
        left_match: &mut [Option<usize>],
        right_match: &mut [Option<usize>],
    ) -> bool {
        for &l in &self.adj[r] {
            if seen[l] {
                continue;
            }
            seen[l] = true;
            let free = match left_match[l] {
                None => true,
                Some(other) => self.augment(other, seen, left_match, right_match),
            };
            if free {
                left_match[l] = Some(r);
                right_match[r] = Some(l);
                return true;
            }
        }
        false
    }
}

/// Decides the constrained Min-Max problem for γ ≤ 1 instances in
/// polynomial time. Returns a witness outcome when feasible.
pub fn solve_gamma1(instance: &Instance, constraints: &ConstraintSet) -> Result<Option<Outcome>> {
    let graph = MatchingGraph::build(instance, constraints)?;
    let matching = graph.maximum_matching();
    if matching.iter().any(Option::is_none) {
        return Ok(None);
    }
    let mut selections = graph.resolved.clone();
    for (r, &k) in graph.timesteps.iter().enumerate() {
        let agent = matching[r].expect("perfect on the right") / graph.levels;
        let project = instance
            .disapproval_set(agent, k)
            .intersection(instance.available(k))
            .iter()
            .next()
            .expect("edges only join agents disapproving an available project");
        selections[k] = Some(project);
    }
    let outcome = Outcome::new(
        selections
            .into_iter()
            .map(|p| p.expect("every timestep set"))
            .collect(),
    );
    debug_assert!(crate::model::satisfies(instance, &outcome, constraints));
    Ok(Some(outcome))
}
