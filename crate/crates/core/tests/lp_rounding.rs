mod common;

use chorevote::lp::{approximation_factor, round_solution};
use chorevote::{build_lp, ell_plus, enumerate_optimal, solve_lp_vertex, Budget, ConstraintSet};
use common::{raw_instance, Raw};
use num::{BigRational, One, Signed, Zero};
use proptest::prelude::*;

type Q = BigRational;

fn q(v: usize) -> Q {
    Q::from_integer(v.into())
}

/// Inequality `a · (x, η) ≥ b`.
struct Row {
    a: Vec<Q>,
    b: Q,
}

/// Every inequality of the relaxation over the surviving timesteps, in
/// `(x, η)` space, built straight from the raw lists.
fn rows(raw: &Raw) -> (Vec<(usize, usize)>, Vec<Row>) {
    let survivors: Vec<usize> = (0..raw.ell)
        .filter(|&k| {
            raw.avail[k]
                .iter()
                .all(|&p| (0..raw.n).any(|i| raw.lists[i][k].contains(&p)))
        })
        .collect();
    let vars: Vec<(usize, usize)> = survivors
        .iter()
        .flat_map(|&k| raw.avail[k].iter().map(move |&p| (p, k)))
        .collect();
    let width = vars.len() + 1;
    let mut out = Vec::new();
    for &k in &survivors {
        let mut a = vec![Q::zero(); width];
        for (v, &(_, kk)) in vars.iter().enumerate() {
            if kk == k {
                a[v] = Q::one();
            }
        }
        out.push(Row { a, b: Q::one() });
    }
    for i in 0..raw.n {
        let mut a = vec![Q::zero(); width];
        for (v, &(p, k)) in vars.iter().enumerate() {
            if raw.lists[i][k].contains(&p) {
                a[v] = -Q::one();
            }
        }
        a[width - 1] = Q::one();
        out.push(Row { a, b: Q::zero() });
    }
    for v in 0..vars.len() {
        let mut a = vec![Q::zero(); width];
        a[v] = Q::one();
        out.push(Row { a, b: Q::zero() });
    }
    (vars, out)
}

/// Solves a square system by Gauss-Jordan; `None` when singular.
fn solve_square(mut a: Vec<Vec<Q>>, mut b: Vec<Q>) -> Option<Vec<Q>> {
    let n = b.len();
    for c in 0..n {
        let piv = (c..n).find(|&r| !a[r][c].is_zero())?;
        a.swap(c, piv);
        b.swap(c, piv);
        for r in 0..n {
            if r != c && !a[r][c].is_zero() {
                let f = &a[r][c] / &a[c][c];
                let pivot_row = a[c].clone();
                for (x, p) in a[r].iter_mut().zip(&pivot_row).skip(c) {
                    *x -= &f * p;
                }
                let d = &f * &b[c];
                b[r] -= d;
            }
        }
    }
    Some((0..n).map(|i| &b[i] / &a[i][i]).collect())
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut with: Vec<Vec<usize>> = subsets(n - 1, k - 1);
    for s in &mut with {
        s.push(n - 1);
    }
    with.extend(subsets(n - 1, k));
    with
}

/// Minimum η over all vertices of the relaxation.
fn vertex_minimum(raw: &Raw) -> Q {
    let (vars, rows) = rows(raw);
    let width = vars.len() + 1;
    let mut best: Option<Q> = None;
    for pick in subsets(rows.len(), width) {
        let a = pick.iter().map(|&r| rows[r].a.clone()).collect();
        let b = pick.iter().map(|&r| rows[r].b.clone()).collect();
        let Some(x) = solve_square(a, b) else {
            continue;
        };
        let feasible = rows.iter().all(|r| {
            let lhs: Q = r.a.iter().zip(&x).map(|(c, v)| c * v).sum();
            lhs >= r.b
        });
        if feasible && best.as_ref().is_none_or(|b| x[width - 1] < *b) {
            best = Some(x[width - 1].clone());
        }
    }
    best.expect("the relaxation is feasible")
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn simplex_value_matches_vertex_enumeration(raw in raw_instance(2, 2, 3)) {
        let inst = raw.build();
        let model = build_lp(&inst);
        prop_assume!(!model.is_empty());
        let sol = solve_lp_vertex(&model).unwrap();
        prop_assert_eq!(&sol.eta, &vertex_minimum(&raw));
    }

    #[test]
    fn rounding_guarantees(raw in raw_instance(4, 3, 6)) {
        let inst = raw.build();
        let model = build_lp(&inst);
        let opt = enumerate_optimal(&inst, &ConstraintSet::empty(), &Budget::default())
            .unwrap()
            .min_max
            .unwrap()
            .value;
        prop_assert_eq!(model.timesteps.len(), ell_plus(&inst));
        if model.is_empty() {
            prop_assert_eq!(opt, 0);
            return Ok(());
        }
        let sol = solve_lp_vertex(&model).unwrap();
        prop_assert!(sol.is_vertex);
        prop_assert!(model.is_feasible(&sol.weights, &sol.eta));
        prop_assert!(sol.eta <= q(opt));
        // every agent row sums to at most η, and ℓ⁺ units of weight land on
        // some agent, so n·η ≥ ℓ⁺
        prop_assert!(q(raw.n) * &sol.eta >= q(model.timesteps.len()));
        let r = round_solution(&inst, &model, &sol).unwrap();
        prop_assert!(r.fractional.len() <= raw.n);
        for (row, &k) in model.coverage_rows.iter().zip(&model.timesteps) {
            if !r.fractional.contains(&k) {
                let chosen = row.iter().find(|&&v| model.variables[v].0 == r.outcome.selections()[k]).unwrap();
                // coverage is an inequality, so a lone weight may exceed 1
                prop_assert!(sol.weights[*chosen] >= Q::one());
            }
        }
        prop_assert_eq!(&r.factor, &approximation_factor(raw.n, raw.m, ell_plus(&inst)));
        prop_assert!(q(r.achieved) <= &r.factor * q(opt));
        prop_assert!(q(r.achieved) <= r.bound);
        prop_assert!(r.eta.is_positive());
    }
}

#[test]
fn lone_weight_can_exceed_one_at_a_vertex() {
    // agent 2 carries timestep 1 alone; agent 1 carries timesteps 2 and 3
    let raw = Raw {
        n: 2,
        m: 1,
        ell: 3,
        lists: vec![
            vec![vec![], vec![0], vec![0]],
            vec![vec![0], vec![], vec![]],
        ],
        avail: vec![vec![0]; 3],
    };
    let inst = raw.build();
    let model = build_lp(&inst);
    let sol = solve_lp_vertex(&model).unwrap();
    assert!(sol.is_vertex);
    assert_eq!(sol.eta, q(2));
    assert_eq!(vertex_minimum(&raw), q(2));
    assert!(sol.weights.iter().all(|w| *w >= Q::one()));
}
