use indexmap::IndexMap;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::model::{ConstraintSet, DisutilityProfile, Instance, Outcome};

/// Back-pointer to the first-discovered predecessor: index into the
/// previous layer and the project chosen.
type Pred = Option<(usize, usize)>;

/// Reachable disutility profiles, one layer per prefix length.
///
/// Layer `k` holds every profile `C_k(o^(k))` of a partial outcome whose
/// prefixes respect all checkpoints and which can still meet the next one.
/// Insertion order is discovery order, which makes reconstruction
/// deterministic.
#[derive(Debug, Clone)]
pub struct DpLayers {
    layers: Vec<IndexMap<DisutilityProfile, Pred>>,
}

impl DpLayers {
    /// Number of layers, including the empty prefix.
    pub fn len(&self) -> usize {
        self.layers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.layers.is_empty()
    }

    pub fn layer_sizes(&self) -> Vec<usize> {
        self.layers.iter().map(IndexMap::len).collect()
    }

    pub fn profiles(&self, k: usize) -> impl Iterator<Item = &DisutilityProfile> {
        self.layers[k].keys()
    }

    /// The partial outcome that first reached profile `index` of layer `k`.
    pub fn partial_outcome(&self, k: usize, index: usize) -> Vec<usize> {
        let mut out = Vec::with_capacity(k);
        let (mut layer, mut idx) = (k, index);
        while let Some((_, &Some((prev, project)))) = self.layers[layer].get_index(idx) {
            out.push(project);
            layer -= 1;
            idx = prev;
        }
        out.reverse();
        out
    }

    /// Whether the last layer is nonempty.
    pub fn feasible(&self) -> bool {
        self.layers.last().is_some_and(|l| !l.is_empty())
    }
}

/// Runs the reachability program up to the last checkpoint.
pub fn run_dp(
    instance: &Instance,
    constraints: &ConstraintSet,
    budget: &Budget,
) -> Result<DpLayers> {
    constraints.validate_for(instance)?;
    let horizon = constraints.last().map_or(0, |c| c.t);
    let mut first = IndexMap::new();
    first.insert(DisutilityProfile::zeros(instance.n()), None);
    let mut layers = vec![first];
    for k in 0..horizon {
        let bound = constraints
            .next_bound(k + 1)
            .expect("k + 1 <= horizon has a checkpoint at or after it") as u32;
        let mut next: IndexMap<DisutilityProfile, Pred> = IndexMap::new();
        for (idx, profile) in layers[k].keys().enumerate() {
            for p in instance.available(k).iter() {
                let stepped = profile.step(instance, k, p);
                if stepped.peak() > bound {
                    continue;
                }
                next.entry(stepped).or_insert(Some((idx, p)));
            }
            if next.len() as u64 > budget.dp_states {
                return Err(Error::BudgetExceeded {
                    resource: "DP states",
                    limit: budget.dp_states,
                });
            }
        }
        let empty = next.is_empty();
        layers.push(next);
        if empty {
            break;
        }
    }
    Ok(DpLayers { layers })
}

/// Decides the constrained Min-Max problem by profile reachability.
/// Returns a witness; timesteps after the last checkpoint take the
/// lowest-index available project.
pub fn solve_dp(
    instance: &Instance,
    constraints: &ConstraintSet,
    budget: &Budget,
) -> Result<Option<Outcome>> {
    let layers = run_dp(instance, constraints, budget)?;
    let horizon = constraints.last().map_or(0, |c| c.t);
    if layers.len() != horizon + 1 || !layers.feasible() {
        return Ok(None);
    }
    let mut selections = layers.partial_outcome(horizon, 0);
    for k in horizon..instance.ell() {
        selections.push(instance.available(k).iter().next().expect("nonempty menu"));
    }
    Ok(Some(Outcome::new(selections)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{disutilities, satisfies, InstanceBuilder};

    #[test]
    fn empty_disapprovals_feasible_at_zero() {
        let inst = InstanceBuilder::new(2, 2, 3).build().unwrap();
        let o = solve_dp(&inst, &ConstraintSet::single(3, 0), &Budget::default()).unwrap();
        assert_eq!(o, Some(Outcome::new(vec![0, 0, 0])));
    }

    #[test]
    fn thm7_instance_needs_one() {
        let mut b = InstanceBuilder::new(4, 2, 2);
        for k in 0..2 {
            b.disapprove(0, k, 0);
            for i in 1..4 {
                b.disapprove(i, k, 1);
            }
        }
        let inst = b.build().unwrap();
        let cs = ConstraintSet::single(2, 1);
        let o = solve_dp(&inst, &cs, &Budget::default()).unwrap().unwrap();
        assert!(satisfies(&inst, &o, &cs));
        assert_eq!(
            solve_dp(&inst, &ConstraintSet::single(2, 0), &Budget::default()).unwrap(),
            None
        );
    }

    #[test]
    fn profiles_match_reconstructed_prefixes() {
        let mut b = InstanceBuilder::new(3, 3, 4);
        for (i, k, p) in [
            (0, 0, 0),
            (1, 0, 1),
            (2, 1, 2),
            (0, 2, 1),
            (1, 3, 0),
            (2, 3, 2),
        ] {
            b.disapprove(i, k, p);
        }
        let inst = b.build().unwrap();
        let layers = run_dp(&inst, &ConstraintSet::single(4, 4), &Budget::default()).unwrap();
        for k in 0..layers.len() {
            for (idx, prof) in layers.profiles(k).enumerate() {
                let partial = Outcome::new(layers.partial_outcome(k, idx));
                let recount: Vec<u32> = disutilities(&inst, &partial, k)
                    .into_iter()
                    .map(|d| d as u32)
                    .collect();
                assert_eq!(&recount, &prof.0);
            }
        }
    }

    #[test]
    fn state_budget_refusal() {
        let mut b = InstanceBuilder::new(6, 2, 6);
        for i in 0..6 {
            for k in 0..6 {
                b.disapprove(i, k, (i + k) % 2);
            }
        }
        let inst = b.build().unwrap();
        let tiny = Budget {
            dp_states: 3,
            ..Budget::default()
        };
        assert!(matches!(
            solve_dp(&inst, &ConstraintSet::single(6, 6), &tiny),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn checkpoint_before_end_leaves_tail_free() {
        let mut b = InstanceBuilder::new(1, 2, 3);
        b.disapprove(0, 0, 0)
            .disapprove(0, 1, 0)
            .disapprove(0, 1, 1);
        let inst = b.build().unwrap();
        let cs = ConstraintSet::single(1, 0);
        assert_eq!(
            solve_dp(&inst, &cs, &Budget::default()).unwrap(),
            Some(Outcome::new(vec![1, 0, 0]))
        );
    }
}
