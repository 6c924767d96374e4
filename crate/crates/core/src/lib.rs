//! Temporal voting over public chores.
//!
//! Agents disapprove projects at each timestep; an outcome picks one project
//! per timestep and an agent's disutility is the number of picks she
//! disapproves. The crate computes Min-Sum and Min-Max outcomes exactly and
//! approximately, checks cumulative fairness constraints, and ships the
//! experiment harnesses and hardness gadgets used to probe them.

pub mod budget;
pub mod error;
pub mod exact;
pub mod experiments;
pub mod greedy;
pub mod io;
pub mod lp;
pub mod model;
pub mod oracle;
pub mod projects;
pub mod random;
pub mod reductions;
pub mod strategy;

pub use budget::Budget;
pub use error::{Error, Result};
pub use exact::{
    compress_types, minimize_minmax, solve_compressed, solve_dp, solve_gamma1, solve_ilp,
};
pub use greedy::{greedy_minsum, run_online, Greedy, OnlineAlgorithm, OnlineState};
pub use lp::{build_lp, lp_round, round_solution, solve_lp_vertex, LpModel, LpSolution};
pub use model::{
    check_constraints, disutilities, disutility, ell_plus, gamma, satisfies, Column, Constraint,
    ConstraintSet, DisutilityProfile, Instance, InstanceBuilder, Objective, Outcome, Violation,
};
pub use oracle::{enumerate_optimal, OracleReport};
pub use projects::ProjectSet;
pub use strategy::{search_manipulation, verify_sp, ManipulationResult, Mechanism};
