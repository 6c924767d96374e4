//! Instances, outcomes, temporal constraints and disutility accounting.
//!
//! Agents, projects and timesteps are 0-indexed throughout the library.
//! The instance file format (see [`crate::io`]) is 1-based and converts at
//! the boundary. Constraint timesteps are *prefix lengths* `t ∈ 1..=ell`:
//! the pair `(t, λ)` bounds the disutility accumulated over the first `t`
//! timesteps, so it is the same number in both conventions.

use std::fmt;

use crate::error::{Error, Result};
use crate::projects::ProjectSet;

/// A temporal voting instance over public chores.
///
/// Immutable once built; construct through [`Instance::new`] or
/// [`InstanceBuilder`], both of which validate.
#[derive(Clone, PartialEq, Eq)]
pub struct Instance {
    n: usize,
    m: usize,
    ell: usize,
    /// Agent-major: entry `agent * ell + k`.
    disapprovals: Vec<ProjectSet>,
    availability: Vec<ProjectSet>,
}

impl Instance {
    /// Builds and validates an instance. `disapprovals[i][k]` is agent `i`'s
    /// disapproval set at timestep `k`; `availability` defaults to all
    /// projects at every timestep.
    pub fn new(
        n: usize,
        m: usize,
        ell: usize,
        disapprovals: Vec<Vec<ProjectSet>>,
        availability: Option<Vec<ProjectSet>>,
    ) -> Result<Self> {
        if n == 0 || m == 0 || ell == 0 {
            return Err(Error::validation(format!(
                "n, m and ell must all be at least 1 (got n={n}, m={m}, ell={ell})"
            )));
        }
        if disapprovals.len() != n {
            return Err(Error::validation(format!(
                "expected disapprovals for {n} agents, got {}",
                disapprovals.len()
            )));
        }
        let mut flat = Vec::with_capacity(n * ell);
        for (i, row) in disapprovals.into_iter().enumerate() {
            if row.len() != ell {
                return Err(Error::validation(format!(
                    "agent {} has {} disapproval sets, expected {ell}",
                    i + 1,
                    row.len()
                )));
            }
            for (k, set) in row.into_iter().enumerate() {
                if let Some(p) = set.max().filter(|&p| p >= m) {
                    return Err(Error::validation(format!(
                        "agent {} timestep {}: project {} out of range 1..={m}",
                        i + 1,
                        k + 1,
                        p + 1
                    )));
                }
                flat.push(set);
            }
        }
        let availability = match availability {
            None => vec![ProjectSet::full(m); ell],
            Some(avail) => {
                if avail.len() != ell {
                    return Err(Error::validation(format!(
                        "expected {ell} availability sets, got {}",
                        avail.len()
                    )));
                }
                for (k, set) in avail.iter().enumerate() {
                    if set.is_empty() {
                        return Err(Error::validation(format!(
                            "timestep {} has no available project",
                            k + 1
                        )));
                    }
                    if let Some(p) = set.max().filter(|&p| p >= m) {
                        return Err(Error::validation(format!(
                            "timestep {}: available project {} out of range 1..={m}",
                            k + 1,
                            p + 1
                        )));
                    }
                }
                avail
            }
        };
        Ok(Instance {
            n,
            m,
            ell,
            disapprovals: flat,
            availability,
        })
    }

    /// Convenience constructor from 0-based index lists.
    pub fn from_lists(n: usize, m: usize, ell: usize, lists: &[Vec<Vec<usize>>]) -> Result<Self> {
        let sets = lists
            .iter()
            .map(|row| row.iter().map(|ps| ps.iter().copied().collect()).collect())
            .collect();
        Instance::new(n, m, ell, sets, None)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    #[inline]
    pub fn disapproval_set(&self, agent: usize, k: usize) -> &ProjectSet {
        &self.disapprovals[agent * self.ell + k]
    }

    #[inline]
    pub fn disapproves(&self, agent: usize, k: usize, project: usize) -> bool {
        self.disapproval_set(agent, k).contains(project)
    }

    /// The projects selectable at timestep `k`.
    #[inline]
    pub fn available(&self, k: usize) -> &ProjectSet {
        &self.availability[k]
    }

    /// Whether some timestep restricts its project menu.
    pub fn has_restricted_availability(&self) -> bool {
        self.availability.iter().any(|a| a.len() != self.m)
    }

    /// Number of agents disapproving `project` at timestep `k`.
    pub fn disapproval_count(&self, k: usize, project: usize) -> usize {
        (0..self.n)
            .filter(|&i| self.disapproves(i, k, project))
            .count()
    }

    /// The agents disapproving `project` at timestep `k`.
    pub fn disapprovers(&self, k: usize, project: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&i| self.disapproves(i, k, project))
    }

    /// Lowest-index available project at `k` that nobody disapproves.
    pub fn free_project(&self, k: usize) -> Option<usize> {
        self.available(k)
            .iter()
            .find(|&p| self.disapproval_count(k, p) == 0)
    }

    /// Everything an online algorithm may see about timestep `k`.
    pub fn column(&self, k: usize) -> Column {
        Column {
            available: self.available(k).clone(),
            disapprovals: (0..self.n)
                .map(|i| self.disapproval_set(i, k).clone())
                .collect(),
        }
    }

    /// Number of outcomes `Π_k |A_k|`, saturating at `u128::MAX`.
    pub fn outcome_count(&self) -> u128 {
        self.availability
            .iter()
            .fold(1u128, |acc, a| acc.saturating_mul(a.len() as u128))
    }

    /// A copy of this instance with agent `agent`'s disapproval vector
    /// replaced (used to evaluate misreports).
    pub fn with_report(&self, agent: usize, report: &[ProjectSet]) -> Result<Instance> {
        if agent >= self.n {
            return Err(Error::validation(format!(
                "agent {} out of range",
                agent + 1
            )));
        }
        if report.len() != self.ell {
            return Err(Error::validation("report length must equal ell"));
        }
        let mut next = self.clone();
        for (k, set) in report.iter().enumerate() {
            if set.max().is_some_and(|p| p >= self.m) {
                return Err(Error::validation("report names a project out of range"));
            }
            next.disapprovals[agent * self.ell + k] = set.clone();
        }
        Ok(next)
    }

    /// Agent `agent`'s disapproval vector.
    pub fn report(&self, agent: usize) -> &[ProjectSet] {
        &self.disapprovals[agent * self.ell..(agent + 1) * self.ell]
    }

    fn check_agent(&self, agent: usize) -> Result<()> {
        if agent >= self.n {
            return Err(Error::validation(format!(
                "agent index {} out of range 1..={}",
                agent + 1,
                self.n
            )));
        }
        Ok(())
    }
}

impl fmt::Debug for Instance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Instance(n={}, m={}, ell={})", self.n, self.m, self.ell)?;
        for i in 0..self.n {
            write!(f, "  agent {}:", i + 1)?;
            for k in 0..self.ell {
                let set: Vec<usize> = self.disapproval_set(i, k).iter().map(|p| p + 1).collect();
                write!(f, " {set:?}")?;
            }
            writeln!(f)?;
        }
        if self.has_restricted_availability() {
            for k in 0..self.ell {
                let set: Vec<usize> = self.available(k).iter().map(|p| p + 1).collect();
                writeln!(f, "  available at {}: {set:?}", k + 1)?;
            }
        }
        Ok(())
    }
}

/// Incremental construction for generators: start from empty disapprovals
/// and full availability, then add.
#[derive(Debug, Clone)]
pub struct InstanceBuilder {
    n: usize,
    m: usize,
    ell: usize,
    disapprovals: Vec<Vec<ProjectSet>>,
    availability: Option<Vec<ProjectSet>>,
}

impl InstanceBuilder {
    pub fn new(n: usize, m: usize, ell: usize) -> Self {
        InstanceBuilder {
            n,
            m,
            ell,
            disapprovals: vec![vec![ProjectSet::new(); ell]; n],
            availability: None,
        }
    }

    pub fn disapprove(&mut self, agent: usize, k: usize, project: usize) -> &mut Self {
        self.disapprovals[agent][k].insert(project);
        self
    }

    /// Restricts the menu at timestep `k`.
    pub fn restrict(&mut self, k: usize, projects: impl IntoIterator<Item = usize>) -> &mut Self {
        let (m, ell) = (self.m, self.ell);
        let avail = self
            .availability
            .get_or_insert_with(|| vec![ProjectSet::full(m); ell]);
        avail[k] = projects.into_iter().collect();
        self
    }

    pub fn build(&self) -> Result<Instance> {
        Instance::new(
            self.n,
            self.m,
            self.ell,
            self.disapprovals.clone(),
            self.availability.clone(),
        )
    }
}

/// What an online algorithm sees at a single timestep.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Column {
    pub available: ProjectSet,
    /// One disapproval set per agent.
    pub disapprovals: Vec<ProjectSet>,
}

impl Column {
    pub fn disapproval_count(&self, project: usize) -> usize {
        self.disapprovals
            .iter()
            .filter(|d| d.contains(project))
            .count()
    }
}

/// One selected project per timestep.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Outcome(Vec<usize>);

impl Outcome {
    pub fn new(selections: Vec<usize>) -> Self {
        Outcome(selections)
    }

    /// Builds an outcome and checks it against the instance.
    pub fn for_instance(instance: &Instance, selections: Vec<usize>) -> Result<Self> {
        let outcome = Outcome(selections);
        outcome.validate(instance)?;
        Ok(outcome)
    }

    pub fn validate(&self, instance: &Instance) -> Result<()> {
        if self.0.len() != instance.ell() {
            return Err(Error::validation(format!(
                "outcome has {} selections, instance has {} timesteps",
                self.0.len(),
                instance.ell()
            )));
        }
        for (k, &p) in self.0.iter().enumerate() {
            if !instance.available(k).contains(p) {
                return Err(Error::validation(format!(
                    "project {} is not available at timestep {}",
                    p + 1,
                    k + 1
                )));
            }
        }
        Ok(())
    }

    pub fn selections(&self) -> &[usize] {
        &self.0
    }

    pub fn into_selections(self) -> Vec<usize> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, p) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "p{}", p + 1)?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A checkpoint `(t, λ)`: every agent's disutility over the first `t`
/// timesteps must be at most `λ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Constraint {
    pub t: usize,
    pub lambda: usize,
}

/// Ordered checkpoints with nondecreasing `t` and nondecreasing `λ`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct ConstraintSet {
    pairs: Vec<Constraint>,
}

impl ConstraintSet {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn single(t: usize, lambda: usize) -> Self {
        ConstraintSet {
            pairs: vec![Constraint { t, lambda }],
        }
    }

    /// Validates monotonicity and `t ≥ 1`.
    pub fn new(pairs: Vec<(usize, usize)>) -> Result<Self> {
        let pairs: Vec<Constraint> = pairs
            .into_iter()
            .map(|(t, lambda)| Constraint { t, lambda })
            .collect();
        for c in &pairs {
            if c.t == 0 {
                return Err(Error::validation("constraint timesteps are 1-based"));
            }
        }
        for w in pairs.windows(2) {
            if w[0].t > w[1].t || w[0].lambda > w[1].lambda {
                return Err(Error::validation(format!(
                    "constraints must be nondecreasing in both t and lambda: ({}, {}) precedes ({}, {})",
                    w[0].t, w[0].lambda, w[1].t, w[1].lambda
                )));
            }
        }
        Ok(ConstraintSet { pairs })
    }

    /// Checks the pairs fit the instance dimensions.
    pub fn validate_for(&self, instance: &Instance) -> Result<()> {
        for c in &self.pairs {
            if c.t > instance.ell() || c.lambda > instance.ell() {
                return Err(Error::validation(format!(
                    "constraint ({}, {}) out of range for ell = {}",
                    c.t,
                    c.lambda,
                    instance.ell()
                )));
            }
        }
        Ok(())
    }

    pub fn pairs(&self) -> &[Constraint] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn last(&self) -> Option<Constraint> {
        self.pairs.last().copied()
    }

    /// Tightest bound applying at prefix length `t` exactly, if any.
    pub fn bound_exactly_at(&self, t: usize) -> Option<usize> {
        self.pairs
            .iter()
            .filter(|c| c.t == t)
            .map(|c| c.lambda)
            .min()
    }

    /// The bound of the first checkpoint at or after prefix length `t`.
    /// Any prefix of length `t` whose max disutility exceeds this can never
    /// be completed feasibly.
    pub fn next_bound(&self, t: usize) -> Option<usize> {
        self.pairs.iter().find(|c| c.t >= t).map(|c| c.lambda)
    }
}

/// Per-agent cumulative disutilities of some partial outcome.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DisutilityProfile(pub Vec<u32>);

impl DisutilityProfile {
    pub fn zeros(n: usize) -> Self {
        DisutilityProfile(vec![0; n])
    }

    pub fn peak(&self) -> u32 {
        self.0.iter().copied().max().unwrap_or(0)
    }

    pub fn sum(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Profile after selecting `project` at timestep `k`.
    pub fn step(&self, instance: &Instance, k: usize, project: usize) -> DisutilityProfile {
        DisutilityProfile(
            self.0
                .iter()
                .enumerate()
                .map(|(i, &u)| u + instance.disapproves(i, k, project) as u32)
                .collect(),
        )
    }
}

/// Number of timesteps `t < upto` (0-based) with `o_t ∈ D_{agent,t}`, i.e.
/// the agent's disutility from the `upto`-truncation.
pub fn disutility(
    instance: &Instance,
    outcome: &Outcome,
    agent: usize,
    upto: usize,
) -> Result<usize> {
    instance.check_agent(agent)?;
    if upto > instance.ell() || upto > outcome.len() {
        return Err(Error::validation(format!(
            "truncation {upto} exceeds the outcome length {}",
            outcome.len().min(instance.ell())
        )));
    }
    Ok(outcome.selections()[..upto]
        .iter()
        .enumerate()
        .filter(|&(k, &p)| instance.disapproves(agent, k, p))
        .count())
}

/// Every agent's disutility from the `upto`-truncation.
pub fn disutilities(instance: &Instance, outcome: &Outcome, upto: usize) -> Vec<usize> {
    let mut acc = vec![0; instance.n()];
    for (k, &p) in outcome.selections()[..upto].iter().enumerate() {
        for (i, a) in acc.iter_mut().enumerate() {
            if instance.disapproves(i, k, p) {
                *a += 1;
            }
        }
    }
    acc
}

/// The two welfare objectives.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Objective {
    MinSum,
    MinMax,
}

impl Objective {
    /// The objective's value (total or maximum disutility) of a full outcome.
    pub fn value(self, instance: &Instance, outcome: &Outcome) -> usize {
        let d = disutilities(instance, outcome, outcome.len());
        match self {
            Objective::MinSum => d.iter().sum(),
            Objective::MinMax => d.into_iter().max().unwrap_or(0),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Objective::MinSum => "min-sum",
            Objective::MinMax => "min-max",
        }
    }
}

/// The first violated checkpoint of an outcome.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Violation {
    /// Position of the pair in the constraint set.
    pub index: usize,
    pub constraint: Constraint,
    /// Lowest-index agent exceeding the bound.
    pub agent: usize,
    pub disutility: usize,
}

/// Checks every checkpoint in order and reports the earliest violation.
pub fn check_constraints(
    instance: &Instance,
    outcome: &Outcome,
    constraints: &ConstraintSet,
) -> Result<Option<Violation>> {
    outcome.validate(instance)?;
    constraints.validate_for(instance)?;
    for (index, &c) in constraints.pairs().iter().enumerate() {
        let d = disutilities(instance, outcome, c.t);
        if let Some((agent, &du)) = d.iter().enumerate().find(|&(_, &du)| du > c.lambda) {
            return Ok(Some(Violation {
                index,
                constraint: c,
                agent,
                disutility: du,
            }));
        }
    }
    Ok(None)
}

/// Boolean form of [`check_constraints`] for callers that already hold a
/// valid outcome.
pub fn satisfies(instance: &Instance, outcome: &Outcome, constraints: &ConstraintSet) -> bool {
    matches!(check_constraints(instance, outcome, constraints), Ok(None))
}

/// γ: the largest number of agents disapproving one available project at
/// one timestep.
pub fn gamma(instance: &Instance) -> usize {
    (0..instance.ell())
        .flat_map(|k| instance.available(k).iter().map(move |p| (k, p)))
        .map(|(k, p)| instance.disapproval_count(k, p))
        .max()
        .unwrap_or(0)
}

/// ℓ⁺: the number of timesteps at which every available project has at
/// least one disapprover.
pub fn ell_plus(instance: &Instance) -> usize {
    (0..instance.ell())
        .filter(|&k| instance.free_project(k).is_none())
        .count()
}
