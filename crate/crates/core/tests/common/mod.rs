//! Test-only brute force, written against the raw disapproval lists rather
//! than the library's oracle.

#![allow(dead_code)]

use chorevote::{ConstraintSet, Instance, InstanceBuilder};
use proptest::prelude::*;

/// Raw form: `lists[i][k]` are the projects agent i disapproves at k;
/// `avail[k]` the available projects.
#[derive(Debug, Clone)]
pub struct Raw {
    pub n: usize,
    pub m: usize,
    pub ell: usize,
    pub lists: Vec<Vec<Vec<usize>>>,
    pub avail: Vec<Vec<usize>>,
}

impl Raw {
    pub fn of(inst: &Instance) -> Raw {
        Raw {
            n: inst.n(),
            m: inst.m(),
            ell: inst.ell(),
            lists: (0..inst.n())
                .map(|i| {
                    (0..inst.ell())
                        .map(|k| inst.disapproval_set(i, k).iter().collect())
                        .collect()
                })
                .collect(),
            avail: (0..inst.ell())
                .map(|k| inst.available(k).iter().collect())
                .collect(),
        }
    }

    pub fn build(&self) -> Instance {
        let mut b = InstanceBuilder::new(self.n, self.m, self.ell);
        for (i, per) in self.lists.iter().enumerate() {
            for (k, ps) in per.iter().enumerate() {
                for &p in ps {
                    b.disapprove(i, k, p);
                }
            }
        }
        for (k, a) in self.avail.iter().enumerate() {
            if a.len() < self.m {
                b.restrict(k, a.iter().copied());
            }
        }
        b.build().unwrap()
    }

    /// Every outcome, lexicographic.
    pub fn outcomes(&self) -> Vec<Vec<usize>> {
        let mut all = vec![Vec::new()];
        for k in 0..self.ell {
            all = all
                .into_iter()
                .flat_map(|prefix| {
                    self.avail[k].iter().map(move |&p| {
                        let mut next = prefix.clone();
                        next.push(p);
                        next
                    })
                })
                .collect();
        }
        all
    }

    pub fn cost(&self, sel: &[usize], agent: usize, upto: usize) -> usize {
        (0..upto)
            .filter(|&k| self.lists[agent][k].contains(&sel[k]))
            .count()
    }

    pub fn costs(&self, sel: &[usize]) -> Vec<usize> {
        (0..self.n).map(|i| self.cost(sel, i, self.ell)).collect()
    }

    pub fn ok(&self, sel: &[usize], pairs: &[(usize, usize)]) -> bool {
        pairs
            .iter()
            .all(|&(t, lam)| (0..self.n).all(|i| self.cost(sel, i, t) <= lam))
    }

    /// (min-sum, min-max) over outcomes meeting `pairs`.
    pub fn optima(&self, pairs: &[(usize, usize)]) -> Option<(usize, usize)> {
        let ok: Vec<Vec<usize>> = self
            .outcomes()
            .into_iter()
            .filter(|o| self.ok(o, pairs))
            .collect();
        if ok.is_empty() {
            return None;
        }
        let sum = ok
            .iter()
            .map(|o| self.costs(o).iter().sum::<usize>())
            .min()
            .unwrap();
        let max = ok
            .iter()
            .map(|o| *self.costs(o).iter().max().unwrap())
            .min()
            .unwrap();
        Some((sum, max))
    }
}

pub fn pairs(cs: &ConstraintSet) -> Vec<(usize, usize)> {
    cs.pairs().iter().map(|c| (c.t, c.lambda)).collect()
}

/// Instances with n, m ≤ `max_nm` and ℓ ≤ `max_ell`, with some restricted
/// availability.
pub fn raw_instance(max_n: usize, max_m: usize, max_ell: usize) -> impl Strategy<Value = Raw> {
    (1..=max_n, 1..=max_m, 1..=max_ell).prop_flat_map(|(n, m, ell)| {
        let full = (1u32 << m) - 1;
        (
            prop::collection::vec(prop::collection::vec(0..=full, ell), n),
            prop::collection::vec(prop_oneof![3 => Just(full), 1 => 1..=full], ell),
        )
            .prop_map(move |(masks, avail)| {
                let bits = |mask: u32| (0..m).filter(|p| mask >> p & 1 == 1).collect::<Vec<_>>();
                Raw {
                    n,
                    m,
                    ell,
                    lists: masks
                        .iter()
                        .map(|per| per.iter().map(|&x| bits(x)).collect())
                        .collect(),
                    avail: avail.into_iter().map(bits).collect(),
                }
            })
    })
}

/// Checkpoint lists with strictly increasing `t ≤ ell` and nondecreasing λ.
pub fn constraint_pairs(ell: usize) -> impl Strategy<Value = Vec<(usize, usize)>> {
    prop::collection::btree_set(1..=ell, 0..=ell.min(3)).prop_flat_map(move |ts| {
        let ts: Vec<usize> = ts.into_iter().collect();
        let len = ts.len();
        prop::collection::vec(0..=ell, len).prop_map(move |mut lams| {
            lams.sort_unstable();
            ts.iter()
                .copied()
                .zip(lams)
                .map(|(t, l)| (t, l.min(t)))
                .collect()
        })
    })
}
