//! Random source-problem inputs.

use rand::seq::SliceRandom;
use rand::Rng as _;

use crate::random::Rng;

use super::cnf::CnfFormula;
use super::graph::Graph;

/// A formula over at most `max_vars` variables obeying the 3-occur
/// convention, with clauses of length 1 to 3 (units included so that
/// propagation and contradictions get exercised).
pub fn random_three_occur(rng: &mut Rng, max_vars: usize) -> CnfFormula {
    let vars = rng.gen_range(1..=max_vars.max(1));
    let mut pool = Vec::new();
    for v in 1..=vars as i32 {
        for _ in 0..rng.gen_range(0..=2) {
            pool.push(v);
        }
        if rng.gen_bool(0.7) {
            pool.push(-v);
        }
    }
    if pool.is_empty() {
        pool.push(1);
    }
    pool.shuffle(rng);
    let mut clauses: Vec<Vec<i32>> = Vec::new();
    let mut current: Vec<i32> = Vec::new();
    let mut target = rng.gen_range(1..=3);
    for l in pool {
        if current.len() == target || current.contains(&l) {
            clauses.push(std::mem::take(&mut current));
            target = rng.gen_range(1..=3);
        }
        current.push(l);
    }
    clauses.push(current);
    CnfFormula::new(vars, clauses).expect("generated formula is well formed")
}

/// `G(n, p)` with `n ≤ max_vertices` and `p` drawn from a small menu.
pub fn random_graph(rng: &mut Rng, max_vertices: usize) -> Graph {
    const DENSITIES: [f64; 3] = [0.2, 0.35, 0.5];
    let n = rng.gen_range(1..=max_vertices.max(1));
    let p = DENSITIES[rng.gen_range(0..DENSITIES.len())];
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, edges).expect("generated graph is simple")
}

/// Clauses of three literals over distinct variables.
pub fn random_three_literal(rng: &mut Rng, max_vars: usize, max_clauses: usize) -> CnfFormula {
    let vars = rng.gen_range(3..=max_vars.max(3));
    let m = rng.gen_range(1..=max_clauses.max(1));
    let all: Vec<i32> = (1..=vars as i32).collect();
    let clauses = (0..m)
        .map(|_| {
            all.choose_multiple(rng, 3)
                .map(|&v| if rng.gen_bool(0.5) { v } else { -v })
                .collect()
        })
        .collect();
    CnfFormula::new(vars, clauses).expect("generated formula is well formed")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::rng;

    #[test]
    fn generated_inputs_respect_conventions() {
        let mut r = rng(4);
        for _ in 0..100 {
            let f = random_three_occur(&mut r, 10);
            assert!(f.check_three_occur().is_ok(), "{f:?}");
            assert!(random_three_literal(&mut r, 6, 5)
                .check_three_literal()
                .is_ok());
            assert!(random_graph(&mut r, 8).vertices <= 8);
        }
    }
}
