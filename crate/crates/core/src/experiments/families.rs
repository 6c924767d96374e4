//! Instance families witnessing the lower bounds.

use std::fmt;

use rand::seq::SliceRandom;
use rand::Rng as _;

use crate::error::{Error, Result};
use crate::model::{ConstraintSet, Instance, InstanceBuilder};
use crate::random::{rng, Rng};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    /// Agent 1 against everyone else over two timesteps, one constraint.
    PotfMinSum { n: usize },
    /// `min(tau, n)` groups of two timesteps with growing bounds.
    PotfMinMax { n: usize, tau: usize },
    /// Unique equitable outcome far from the optimum.
    Poe { n: usize },
    /// Agent `i` disapproves every project but `p_i`.
    PropImpossible { n: usize, ell: usize },
    /// Greedy Min-Sum keeps hurting one agent; `n = 2k + 1`.
    CrGreedyMinSum { k: usize },
    /// Greedy Min-Max alternates; `2n` timesteps.
    CrGreedyMinMax { n: usize },
    /// Random halving adversary; `n = 2^k`.
    RandomSplit { k: usize, seed: u64 },
}

impl Family {
    pub const NAMES: [&'static str; 7] = [
        "potf-minsum",
        "potf-minmax",
        "poe",
        "prop-impossible",
        "cr-greedy-minsum",
        "cr-greedy-minmax",
        "randomsplit",
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Family::PotfMinSum { .. } => "potf-minsum",
            Family::PotfMinMax { .. } => "potf-minmax",
            Family::Poe { .. } => "poe",
            Family::PropImpossible { .. } => "prop-impossible",
            Family::CrGreedyMinSum { .. } => "cr-greedy-minsum",
            Family::CrGreedyMinMax { .. } => "cr-greedy-minmax",
            Family::RandomSplit { .. } => "randomsplit",
        }
    }

    /// Builds a family from its name and optional parameters. Missing
    /// parameters are an error naming the family.
    pub fn from_parts(
        name: &str,
        n: Option<usize>,
        k: Option<usize>,
        tau: Option<usize>,
        ell: Option<usize>,
        seed: u64,
    ) -> Result<Self> {
        let need = |v: Option<usize>, p: &str| {
            v.ok_or_else(|| Error::validation(format!("family {name} needs --{p}")))
        };
        Ok(match name {
            "potf-minsum" => Family::PotfMinSum { n: need(n, "n")? },
            "potf-minmax" => Family::PotfMinMax {
                n: need(n, "n")?,
                tau: need(tau, "tau")?,
            },
            "poe" => Family::Poe { n: need(n, "n")? },
            "prop-impossible" => Family::PropImpossible {
                n: need(n, "n")?,
                ell: need(ell, "ell")?,
            },
            "cr-greedy-minsum" => Family::CrGreedyMinSum { k: need(k, "k")? },
            "cr-greedy-minmax" => Family::CrGreedyMinMax { n: need(n, "n")? },
            "randomsplit" => Family::RandomSplit {
                k: need(k, "k")?,
                seed,
            },
            other => {
                return Err(Error::validation(format!(
                    "unknown family `{other}` (expected one of {})",
                    Family::NAMES.join(", ")
                )))
            }
        })
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Family::PotfMinSum { n } | Family::Poe { n } | Family::CrGreedyMinMax { n } => {
                write!(f, "n={n}")
            }
            Family::PotfMinMax { n, tau } => write!(f, "n={n};tau={tau}"),
            Family::PropImpossible { n, ell } => write!(f, "n={n};ell={ell}"),
            Family::CrGreedyMinSum { k } => write!(f, "k={k}"),
            Family::RandomSplit { k, seed } => write!(f, "k={k};seed={seed}"),
        }
    }
}

/// The halving sequence behind a random-split instance. `left[i]` and
/// `right[i]` split `left[i-1]` (with `left[-1]` being all agents);
/// `flips[i]` means the left half disapproves p2 at timestep `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitSequence {
    pub k: usize,
    pub seed: u64,
    pub left: Vec<Vec<usize>>,
    pub right: Vec<Vec<usize>>,
    pub flips: Vec<bool>,
}

impl SplitSequence {
    /// Draws the sequence from `rng(seed)`.
    pub fn draw(k: usize, seed: u64) -> Result<Self> {
        Self::draw_from(k, seed, &mut rng(seed))
    }

    /// Draws the sequence from an existing generator; `seed` is recorded
    /// for reporting only.
    pub fn draw_from(k: usize, seed: u64, r: &mut Rng) -> Result<Self> {
        if k == 0 || k > 16 {
            return Err(Error::validation("randomsplit needs 1 ≤ k ≤ 16"));
        }
        let mut current: Vec<usize> = (0..1 << k).collect();
        let mut seq = SplitSequence {
            k,
            seed,
            left: Vec::with_capacity(k),
            right: Vec::with_capacity(k),
            flips: Vec::with_capacity(k),
        };
        for _ in 0..k {
            current.shuffle(r);
            let (l, rr) = current.split_at(current.len() / 2);
            let (mut l, mut rr) = (l.to_vec(), rr.to_vec());
            l.sort_unstable();
            rr.sort_unstable();
            seq.flips.push(r.gen_bool(0.5));
            seq.right.push(rr);
            current = l.clone();
            seq.left.push(l);
        }
        Ok(seq)
    }

    /// Agents in every left half.
    pub fn core(&self) -> &[usize] {
        self.left.last().map_or(&[], Vec::as_slice)
    }
}

/// A generated instance together with its constraints (possibly empty).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyInstance {
    pub family: Family,
    pub instance: Instance,
    pub constraints: ConstraintSet,
    pub split: Option<SplitSequence>,
}

fn at_least(v: usize, min: usize, what: &str) -> Result<()> {
    if v < min {
        return Err(Error::validation(format!("{what} must be at least {min}")));
    }
    Ok(())
}

pub fn gen_family(family: Family) -> Result<FamilyInstance> {
    let mut split = None;
    let mut constraints = ConstraintSet::empty();
    let instance = match family {
        Family::PotfMinSum { n } => {
            at_least(n, 2, "n")?;
            let mut b = InstanceBuilder::new(n, 2, 2);
            for k in 0..2 {
                b.disapprove(0, k, 0);
                for i in 1..n {
                    b.disapprove(i, k, 1);
                }
            }
            constraints = ConstraintSet::single(2, 1);
            b.build()?
        }
        Family::PotfMinMax { n, tau } => {
            at_least(n, 1, "n")?;
            at_least(tau, 1, "tau")?;
            let groups = tau.min(n);
            let mut b = InstanceBuilder::new(n, 2, 2 * groups);
            for g in 0..groups {
                for k in [2 * g, 2 * g + 1] {
                    for i in 0..n {
                        b.disapprove(i, k, if i == g { 0 } else { 1 });
                    }
                }
            }
            constraints = ConstraintSet::new((1..=groups).map(|g| (2 * g, g)).collect())?;
            b.build()?
        }
        Family::Poe { n } => {
            at_least(n, 3, "n")?;
            let ell = 2 * n - 3;
            let mut b = InstanceBuilder::new(n, 2, ell);
            b.restrict(0, [0]).disapprove(0, 0, 0);
            // timestep i ∈ 2..=n: p2 disapproved by agents 2..=n except i
            for i in 2..=n {
                for j in (2..=n).filter(|&j| j != i) {
                    b.disapprove(j - 1, i - 1, 1);
                }
            }
            for k in n..ell {
                b.disapprove(0, k, 1);
            }
            b.build()?
        }
        Family::PropImpossible { n, ell } => {
            at_least(n, 1, "n")?;
            at_least(ell, 1, "ell")?;
            let mut b = InstanceBuilder::new(n, n, ell);
            for i in 0..n {
                for k in 0..ell {
                    for p in (0..n).filter(|&p| p != i) {
                        b.disapprove(i, k, p);
                    }
                }
            }
            b.build()?
        }
        Family::CrGreedyMinSum { k } => {
            at_least(k, 1, "k")?;
            let n = 2 * k + 1;
            let mut b = InstanceBuilder::new(n, 2, k);
            for t in 0..k {
                b.disapprove(n - 1, t, 0)
                    .disapprove(2 * t, t, 1)
                    .disapprove(2 * t + 1, t, 1);
            }
            b.build()?
        }
        Family::CrGreedyMinMax { n } => {
            at_least(n, 1, "n")?;
            let mut b = InstanceBuilder::new(n, 2, 2 * n);
            for t in 0..2 * n {
                for i in 0..n {
                    b.disapprove(i, t, if i == t / 2 { 0 } else { 1 });
                }
            }
            b.build()?
        }
        Family::RandomSplit { k, seed } => {
            let seq = SplitSequence::draw(k, seed)?;
            let inst = random_split_instance(&seq)?;
            split = Some(seq);
            inst
        }
    };
    Ok(FamilyInstance {
        family,
        instance,
        constraints,
        split,
    })
}

/// Timestep `t` has the left half disapproving one project and the right
/// half the other; agents split off earlier disapprove nothing.
pub fn random_split_instance(seq: &SplitSequence) -> Result<Instance> {
    let mut b = InstanceBuilder::new(1 << seq.k, 2, seq.k);
    for t in 0..seq.k {
        let (lp, rp) = if seq.flips[t] { (1, 0) } else { (0, 1) };
        for &i in &seq.left[t] {
            b.disapprove(i, t, lp);
        }
        for &i in &seq.right[t] {
            b.disapprove(i, t, rp);
        }
    }
    b.build()
}
