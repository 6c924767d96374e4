//! Exact procedures for the constrained Min-Max decision problem.

mod compressed;
mod dp;
mod gamma1;
mod search;

pub use compressed::{
    compress_types, decode_assignment, solve_compressed, solve_ilp, AgentMask, CompressedProgram,
    TimestepType,
};
pub use dp::{run_dp, solve_dp, DpLayers};
pub use gamma1::{solve_gamma1, MatchingGraph};
pub use search::{minimize_minmax, minimize_with};
