//! Greedy Min-Sum and Greedy Min-Max, offline and through an online
//! stepping interface that reveals one column at a time.

use crate::error::{Error, Result};
use crate::model::{Column, DisutilityProfile, Instance, Outcome};

/// What an online algorithm has committed to so far.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OnlineState {
    /// Number of timesteps already decided.
    pub k: usize,
    pub profile: DisutilityProfile,
    pub selections: Vec<usize>,
}

impl OnlineState {
    pub fn new(n: usize) -> Self {
        OnlineState {
            k: 0,
            profile: DisutilityProfile::zeros(n),
            selections: Vec::new(),
        }
    }

    /// Commits `project` for the column just revealed.
    pub fn advance(&mut self, column: &Column, project: usize) {
        for (u, d) in self.profile.0.iter_mut().zip(&column.disapprovals) {
            *u += d.contains(project) as u32;
        }
        self.selections.push(project);
        self.k += 1;
    }
}

fn argmin_available<F: Fn(usize) -> usize>(column: &Column, score: F) -> Result<usize> {
    let mut best: Option<(usize, usize)> = None;
    for p in column.available.iter() {
        let s = score(p);
        if best.is_none_or(|(_, b)| s < b) {
            best = Some((p, s));
        }
    }
    best.map(|(p, _)| p)
        .ok_or_else(|| Error::validation("timestep has no available project"))
}

/// Available project with the fewest disapprovals; ties to the lowest index.
pub fn greedy_minsum_step(_state: &OnlineState, column: &Column) -> Result<usize> {
    argmin_available(column, |p| column.disapproval_count(p))
}

/// Available project minimizing the resulting maximum cumulative
/// disutility; ties to the lowest index.
pub fn greedy_minmax_step(state: &OnlineState, column: &Column) -> Result<usize> {
    argmin_available(column, |p| {
        state
            .profile
            .0
            .iter()
            .zip(&column.disapprovals)
            .map(|(&u, d)| u as usize + d.contains(p) as usize)
            .max()
            .unwrap_or(0)
    })
}

/// An online algorithm sees the columns revealed so far (the last one is
/// the current timestep) and its own past choices.
pub trait OnlineAlgorithm {
    fn choose(&mut self, revealed: &[Column], state: &OnlineState) -> Result<usize>;
}

/// The two built-in greedy rules.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Greedy {
    MinSum,
    MinMax,
}

impl Greedy {
    pub fn name(self) -> &'static str {
        match self {
            Greedy::MinSum => "greedy-minsum",
            Greedy::MinMax => "greedy-minmax",
        }
    }
}

impl OnlineAlgorithm for Greedy {
    fn choose(&mut self, revealed: &[Column], state: &OnlineState) -> Result<usize> {
        let column = revealed.last().expect("at least one revealed column");
        match self {
            Greedy::MinSum => greedy_minsum_step(state, column),
            Greedy::MinMax => greedy_minmax_step(state, column),
        }
    }
}

/// Adapts a closure into an [`OnlineAlgorithm`].
pub struct FnAlgorithm<F>(pub F);

impl<F> OnlineAlgorithm for FnAlgorithm<F>
where
    F: FnMut(&[Column], &OnlineState) -> Result<usize>,
{
    fn choose(&mut self, revealed: &[Column], state: &OnlineState) -> Result<usize> {
        (self.0)(revealed, state)
    }
}

/// Runs `algorithm` over the instance, revealing columns one at a time.
pub fn run_online<A: OnlineAlgorithm + ?Sized>(
    instance: &Instance,
    algorithm: &mut A,
) -> Result<Outcome> {
    let mut state = OnlineState::new(instance.n());
    let mut revealed = Vec::with_capacity(instance.ell());
    for k in 0..instance.ell() {
        revealed.push(instance.column(k));
        let p = algorithm.choose(&revealed, &state)?;
        if !instance.available(k).contains(p) {
            return Err(Error::validation(format!(
                "online algorithm chose unavailable project p{} at timestep {}",
                p + 1,
                k + 1
            )));
        }
        state.advance(&revealed[k], p);
    }
    Ok(Outcome::new(state.selections))
}

/// Offline Greedy Min-Sum: the fewest-disapproved available project at
/// every timestep. This is an exact Min-Sum optimum.
pub fn greedy_minsum(instance: &Instance) -> Outcome {
    let selections = (0..instance.ell())
        .map(|k| {
            instance
                .available(k)
                .iter()
                .min_by_key(|&p| instance.disapproval_count(k, p))
                .expect("availability is nonempty")
        })
        .collect();
    Outcome::new(selections)
}
