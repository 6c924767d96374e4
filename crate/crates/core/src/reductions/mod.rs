//! Hardness gadgets as instance generators, with decoders and
//! brute-force solvers for the source problems.

pub mod cnf;
pub mod domset;
pub mod generate;
pub mod graph;
pub mod one_in_three;
pub mod source;
pub mod three_occur;

pub use cnf::{parse_dimacs, CnfFormula};
pub use domset::{reduce_domset, DomsetReduction};
pub use graph::{parse_graph, Graph};
pub use one_in_three::{reduce_1in3, OneInThreeReduction};
pub use three_occur::{propagate_units, reduce_3occur, Propagated, ThreeOccurReduction};
