//! CNF formulas in the DIMACS clause-list convention.

use std::fmt::Write as _;

use crate::error::{Error, Result};

/// Literals are nonzero integers: `v` is variable `v` (1-based), `-v` its
/// negation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CnfFormula {
    pub vars: usize,
    pub clauses: Vec<Vec<i32>>,
}

impl CnfFormula {
    pub fn new(vars: usize, clauses: Vec<Vec<i32>>) -> Result<Self> {
        for (j, c) in clauses.iter().enumerate() {
            if c.is_empty() {
                return Err(Error::validation(format!("clause {} is empty", j + 1)));
            }
            for &l in c {
                if l == 0 || l.unsigned_abs() as usize > vars {
                    return Err(Error::validation(format!(
                        "clause {}: literal {l} outside 1..={vars}",
                        j + 1
                    )));
                }
            }
            for (a, &l) in c.iter().enumerate() {
                if c[..a].contains(&l) {
                    return Err(Error::validation(format!(
                        "clause {} repeats literal {l}",
                        j + 1
                    )));
                }
            }
        }
        Ok(CnfFormula { vars, clauses })
    }

    /// Positive and negative occurrence counts of variable `v` (1-based).
    pub fn occurrences(&self, v: usize) -> (usize, usize) {
        let mut pos = 0;
        let mut neg = 0;
        for &l in self.clauses.iter().flatten() {
            if l.unsigned_abs() as usize == v {
                if l > 0 {
                    pos += 1;
                } else {
                    neg += 1;
                }
            }
        }
        (pos, neg)
    }

    /// Clauses of length at most 3, each variable at most twice positive
    /// and at most once negative.
    pub fn check_three_occur(&self) -> Result<()> {
        if let Some(j) = self.clauses.iter().position(|c| c.len() > 3) {
            return Err(Error::validation(format!(
                "clause {} has more than 3 literals",
                j + 1
            )));
        }
        for v in 1..=self.vars {
            let (pos, neg) = self.occurrences(v);
            if pos > 2 || neg > 1 {
                return Err(Error::validation(format!(
                    "variable {v} occurs {pos} times positively and {neg} times negatively (at most 2 and 1)"
                )));
            }
        }
        Ok(())
    }

    /// At least one clause, each with exactly three literals.
    pub fn check_three_literal(&self) -> Result<()> {
        if self.clauses.is_empty() {
            return Err(Error::validation("formula has no clauses"));
        }
        if let Some(j) = self.clauses.iter().position(|c| c.len() != 3) {
            return Err(Error::validation(format!(
                "clause {} does not have exactly 3 literals",
                j + 1
            )));
        }
        Ok(())
    }

    /// Whether `assignment[v-1]` satisfies every clause.
    pub fn satisfied_by(&self, assignment: &[bool]) -> bool {
        self.clauses
            .iter()
            .all(|c| c.iter().any(|&l| literal_value(l, assignment)))
    }

    pub fn to_dimacs(&self) -> String {
        let mut out = format!("p cnf {} {}\n", self.vars, self.clauses.len());
        for c in &self.clauses {
            for l in c {
                write!(out, "{l} ").unwrap();
            }
            out.push_str("0\n");
        }
        out
    }
}

pub(crate) fn literal_value(l: i32, assignment: &[bool]) -> bool {
    assignment[l.unsigned_abs() as usize - 1] == (l > 0)
}

/// Parses `p cnf V C` followed by zero-terminated clauses. Lines starting
/// with `c` are comments.
pub fn parse_dimacs(text: &str) -> Result<CnfFormula> {
    let mut header: Option<(usize, usize)> = None;
    let mut clauses = Vec::new();
    let mut current = Vec::new();
    for line in text.lines().map(str::trim) {
        if line.is_empty() || line.starts_with('c') || line.starts_with('%') {
            continue;
        }
        if let Some(rest) = line.strip_prefix('p') {
            let parts: Vec<&str> = rest.split_whitespace().collect();
            match parts.as_slice() {
                ["cnf", v, c] => {
                    let v = v
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad variable count `{v}`")))?;
                    let c = c
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad clause count `{c}`")))?;
                    header = Some((v, c));
                }
                _ => return Err(Error::Parse(format!("bad header `{line}`"))),
            }
            continue;
        }
        if header.is_none() {
            return Err(Error::Parse("clause before `p cnf` header".into()));
        }
        for tok in line.split_whitespace() {
            let l: i32 = tok
                .parse()
                .map_err(|_| Error::Parse(format!("bad literal `{tok}`")))?;
            if l == 0 {
                clauses.push(std::mem::take(&mut current));
            } else {
                current.push(l);
            }
        }
    }
    let (vars, count) = header.ok_or_else(|| Error::Parse("missing `p cnf` header".into()))?;
    if !current.is_empty() {
        clauses.push(current);
    }
    if clauses.len() != count {
        return Err(Error::Parse(format!(
            "header declares {count} clauses, found {}",
            clauses.len()
        )));
    }
    CnfFormula::new(vars, clauses)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimacs_round_trip() {
        let f = parse_dimacs("c demo\np cnf 3 2\n1 -2 0\n2 3 -1 0\n").unwrap();
        assert_eq!(f.clauses, vec![vec![1, -2], vec![2, 3, -1]]);
        assert_eq!(parse_dimacs(&f.to_dimacs()).unwrap(), f);
    }

    #[test]
    fn malformed_input() {
        assert!(parse_dimacs("1 2 0\n").is_err());
        assert!(parse_dimacs("p cnf 2 2\n1 2 0\n").is_err());
        assert!(parse_dimacs("p cnf 2 1\n1 3 0\n").is_err());
        assert!(parse_dimacs("p cnf 2 1\n1 1 0\n").is_err());
    }

    #[test]
    fn three_occur_convention() {
        let ok = CnfFormula::new(1, vec![vec![1], vec![1], vec![-1]]).unwrap();
        assert!(ok.check_three_occur().is_ok());
        let bad = CnfFormula::new(1, vec![vec![-1], vec![-1]]).unwrap();
        assert!(bad.check_three_occur().is_err());
        assert!(CnfFormula::new(1, vec![])
            .unwrap()
            .check_three_literal()
            .is_err());
    }
}
