//! Dense two-phase simplex over exact rationals with Bland's rule.

use num::{BigRational, One, Signed, Zero};

use crate::error::{Error, Result};

pub type Q = BigRational;

/// `min cost·x` subject to `a·x = b`, `x ≥ 0`, with `b ≥ 0`.
#[derive(Debug, Clone)]
pub struct StandardForm {
    pub a: Vec<Vec<Q>>,
    pub b: Vec<Q>,
    pub cost: Vec<Q>,
}

/// A basic feasible optimum.
#[derive(Debug, Clone)]
pub struct BasicSolution {
    pub x: Vec<Q>,
    pub basis: Vec<usize>,
    pub value: Q,
    pub pivots: usize,
}

struct Tableau {
    rows: Vec<Vec<Q>>,
    rhs: Vec<Q>,
    basis: Vec<usize>,
    reduced: Vec<Q>,
    value: Q,
    allowed: Vec<bool>,
    pivots: usize,
}

impl Tableau {
    fn pivot(&mut self, r: usize, c: usize) {
        let inv = self.rows[r][c].recip();
        for v in self.rows[r].iter_mut() {
            *v *= &inv;
        }
        self.rhs[r] *= &inv;
        let prow = self.rows[r].clone();
        let prhs = self.rhs[r].clone();
        for i in 0..self.rows.len() {
            if i == r || self.rows[i][c].is_zero() {
                continue;
            }
            let f = self.rows[i][c].clone();
            for (v, p) in self.rows[i].iter_mut().zip(&prow) {
                if !p.is_zero() {
                    *v -= &f * p;
                }
            }
            self.rhs[i] -= &f * &prhs;
        }
        if !self.reduced[c].is_zero() {
            let f = self.reduced[c].clone();
            for (v, p) in self.reduced.iter_mut().zip(&prow) {
                if !p.is_zero() {
                    *v -= &f * p;
                }
            }
            self.value += &f * &prhs;
        }
        self.basis[r] = c;
        self.pivots += 1;
    }

    fn set_cost(&mut self, cost: &[Q]) {
        self.reduced = cost.to_vec();
        self.value = Q::zero();
        for (i, &bv) in self.basis.iter().enumerate() {
            let cb = cost[bv].clone();
            if cb.is_zero() {
                continue;
            }
            for (v, a) in self.reduced.iter_mut().zip(&self.rows[i]) {
                *v -= &cb * a;
            }
            self.value += &cb * &self.rhs[i];
        }
    }

    /// Bland's rule: lowest-index improving column, ratio ties to the
    /// lowest-index basic variable. Terminates without cycling.
    fn optimize(&mut self) -> Result<()> {
        loop {
            let entering =
                (0..self.reduced.len()).find(|&j| self.allowed[j] && self.reduced[j].is_negative());
            let Some(c) = entering else { return Ok(()) };
            let mut leave: Option<(usize, Q)> = None;
            for i in 0..self.rows.len() {
                if !self.rows[i][c].is_positive() {
                    continue;
                }
                let ratio = &self.rhs[i] / &self.rows[i][c];
                let better = match &leave {
                    None => true,
                    Some((r, best)) => {
                        ratio < *best || (ratio == *best && self.basis[i] < self.basis[*r])
                    }
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            let Some((r, _)) = leave else {
                return Err(Error::precondition("linear program is unbounded"));
            };
            self.pivot(r, c);
        }
    }
}

/// Solves the program. `Ok(None)` means infeasible.
pub fn solve(sf: &StandardForm) -> Result<Option<BasicSolution>> {
    let rows = sf.a.len();
    let cols = sf.cost.len();
    if sf.b.iter().any(Signed::is_negative) {
        return Err(Error::validation("standard form needs b ≥ 0"));
    }
    // artificial j = cols + i on row i
    let mut tableau = Tableau {
        rows: sf
            .a
            .iter()
            .enumerate()
            .map(|(i, row)| {
                let mut r = row.clone();
                r.extend((0..rows).map(|j| if i == j { Q::one() } else { Q::zero() }));
                r
            })
            .collect(),
        rhs: sf.b.clone(),
        basis: (cols..cols + rows).collect(),
        reduced: Vec::new(),
        value: Q::zero(),
        allowed: vec![true; cols + rows],
        pivots: 0,
    };
    let phase1: Vec<Q> = (0..cols + rows)
        .map(|j| if j < cols { Q::zero() } else { Q::one() })
        .collect();
    tableau.set_cost(&phase1);
    tableau.optimize()?;
    if tableau.value.is_positive() {
        return Ok(None);
    }
    // drive zero-level artificials out of the basis; drop redundant rows
    let mut i = 0;
    while i < tableau.rows.len() {
        if tableau.basis[i] >= cols {
            match (0..cols).find(|&j| !tableau.rows[i][j].is_zero()) {
                Some(j) => tableau.pivot(i, j),
                None => {
                    tableau.rows.remove(i);
                    tableau.rhs.remove(i);
                    tableau.basis.remove(i);
                    continue;
                }
            }
        }
        i += 1;
    }
    for j in cols..cols + rows {
        tableau.allowed[j] = false;
    }
    let mut phase2 = sf.cost.clone();
    phase2.extend((0..rows).map(|_| Q::zero()));
    tableau.set_cost(&phase2);
    tableau.optimize()?;
    let mut x = vec![Q::zero(); cols];
    for (i, &bv) in tableau.basis.iter().enumerate() {
        x[bv] = tableau.rhs[i].clone();
    }
    Ok(Some(BasicSolution {
        x,
        basis: tableau.basis,
        value: tableau.value,
        pivots: tableau.pivots,
    }))
}

/// Rank of a set of column vectors, by exact elimination.
pub fn rank(columns: &[Vec<Q>]) -> usize {
    let mut m: Vec<Vec<Q>> = columns.to_vec();
    let dim = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for coord in 0..dim {
        let Some(p) = (rank..m.len()).find(|&i| !m[i][coord].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let pivot = m[rank].clone();
        for row in m.iter_mut().skip(rank + 1) {
            if row[coord].is_zero() {
                continue;
            }
            let f = &row[coord] / &pivot[coord];
            for (v, pv) in row.iter_mut().zip(&pivot) {
                *v -= &f * pv;
            }
        }
        rank += 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Q {
        Q::from_integer(n.into())
    }

    #[test]
    fn textbook_program() {
        // min -x - y  s.t. x + 2y + s1 = 4, 3x + y + s2 = 6
        let sf = StandardForm {
            a: vec![vec![q(1), q(2), q(1), q(0)], vec![q(3), q(1), q(0), q(1)]],
            b: vec![q(4), q(6)],
            cost: vec![q(-1), q(-1), q(0), q(0)],
        };
        let s = solve(&sf).unwrap().unwrap();
        assert_eq!(s.value, Q::new((-14).into(), 5.into()));
        assert_eq!(s.x[0], Q::new(8.into(), 5.into()));
        assert_eq!(s.x[1], Q::new(6.into(), 5.into()));
    }

    #[test]
    fn infeasible_program() {
        // x + y = 1, x + y = 2
        let sf = StandardForm {
            a: vec![vec![q(1), q(1)], vec![q(1), q(1)]],
            b: vec![q(1), q(2)],
            cost: vec![q(0), q(0)],
        };
        assert!(solve(&sf).unwrap().is_none());
    }

    #[test]
    fn redundant_rows_are_dropped() {
        let sf = StandardForm {
            a: vec![vec![q(1), q(1)], vec![q(2), q(2)]],
            b: vec![q(1), q(2)],
            cost: vec![q(1), q(2)],
        };
        let s = solve(&sf).unwrap().unwrap();
        assert_eq!(s.value, q(1));
        assert_eq!(s.basis.len(), 1);
    }

    #[test]
    fn rank_detects_dependence() {
        assert_eq!(rank(&[vec![q(1), q(2)], vec![q(2), q(4)]]), 1);
        assert_eq!(rank(&[vec![q(1), q(0)], vec![q(1), q(1)]]), 2);
        assert_eq!(rank(&[]), 0);
    }
}
