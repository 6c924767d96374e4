//! Brute-force solvers for the source problems. Deliberately share no code
//! with the reductions they check.

use super::cnf::CnfFormula;
use super::graph::Graph;

fn assignments(vars: usize) -> impl Iterator<Item = Vec<bool>> {
    (0u64..1 << vars).map(move |bits| (0..vars).map(|v| bits >> v & 1 == 1).collect())
}

fn true_literals(clause: &[i32], a: &[bool]) -> usize {
    clause
        .iter()
        .filter(|&&l| {
            let value = a[(l.abs() - 1) as usize];
            if l > 0 {
                value
            } else {
                !value
            }
        })
        .count()
}

/// First satisfying assignment in binary counting order.
pub fn brute_force_sat(formula: &CnfFormula) -> Option<Vec<bool>> {
    assignments(formula.vars).find(|a| formula.clauses.iter().all(|c| true_literals(c, a) >= 1))
}

/// First assignment with exactly one true literal per clause.
pub fn brute_force_one_in_three(formula: &CnfFormula) -> Option<Vec<bool>> {
    assignments(formula.vars).find(|a| formula.clauses.iter().all(|c| true_literals(c, a) == 1))
}

/// Whether `set` dominates every vertex.
pub fn is_dominating(graph: &Graph, set: &[usize]) -> bool {
    (0..graph.vertices).all(|v| set.iter().any(|&d| d == v || graph.adjacent(d, v)))
}

/// A smallest dominating set of size at most `kappa`, if any.
pub fn brute_force_dominating_set(graph: &Graph, kappa: usize) -> Option<Vec<usize>> {
    let n = graph.vertices;
    let mut best: Option<Vec<usize>> = None;
    for mask in 0u64..1 << n {
        let size = mask.count_ones() as usize;
        if size > kappa || best.as_ref().is_some_and(|b| b.len() <= size) {
            continue;
        }
        let set: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
        if is_dominating(graph, &set) {
            best = Some(set);
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tiny_cases() {
        let unsat = CnfFormula::new(1, vec![vec![1], vec![-1]]).unwrap();
        assert!(brute_force_sat(&unsat).is_none());
        let f = CnfFormula::new(3, vec![vec![1, 2, 3]]).unwrap();
        assert_eq!(brute_force_one_in_three(&f), Some(vec![true, false, false]));
        let p4 = Graph::new(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        assert!(brute_force_dominating_set(&p4, 1).is_none());
        assert_eq!(brute_force_dominating_set(&p4, 2).map(|s| s.len()), Some(2));
    }
}
