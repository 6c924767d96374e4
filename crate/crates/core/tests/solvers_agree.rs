mod common;

use chorevote::exact::{run_dp, MatchingGraph};
use chorevote::{
    compress_types, disutilities, disutility, ell_plus, enumerate_optimal, gamma, greedy_minsum,
    minimize_minmax, satisfies, solve_compressed, solve_dp, solve_gamma1, solve_ilp, Budget,
    ConstraintSet, Objective, Outcome,
};
use common::{constraint_pairs, pairs, raw_instance, Raw};
use proptest::prelude::*;

fn gamma1_raw() -> impl Strategy<Value = Raw> {
    raw_instance(3, 3, 4).prop_map(|mut raw| {
        // keep at most one disapprover per (project, timestep)
        for k in 0..raw.ell {
            for p in 0..raw.m {
                let mut seen = false;
                for i in 0..raw.n {
                    if raw.lists[i][k].contains(&p) {
                        if seen {
                            raw.lists[i][k].retain(|&q| q != p);
                        }
                        seen = true;
                    }
                }
            }
        }
        raw
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn disutility_is_a_recount((raw, sel) in raw_instance(3, 3, 4).prop_flat_map(|raw| {
        let choices: Vec<_> = raw.avail.iter().map(|a| prop::sample::select(a.clone())).collect();
        (Just(raw), choices)
    })) {
        let inst = raw.build();
        let out = Outcome::for_instance(&inst, sel.clone()).unwrap();
        let mut last = vec![0; raw.n];
        for t in 0..=raw.ell {
            let now = disutilities(&inst, &out, t);
            for i in 0..raw.n {
                prop_assert_eq!(now[i], raw.cost(&sel, i, t));
                prop_assert_eq!(disutility(&inst, &out, i, t).unwrap(), now[i]);
                prop_assert!(now[i] >= last[i]);
            }
            last = now;
        }
    }

    #[test]
    fn statistics_ignore_agent_order(raw in raw_instance(3, 3, 4), rot in 0usize..3) {
        let inst = raw.build();
        let mut shuffled = raw.clone();
        let r = rot % raw.n;
        shuffled.lists.rotate_left(r);
        let other = shuffled.build();
        prop_assert_eq!(gamma(&inst), gamma(&other));
        prop_assert_eq!(ell_plus(&inst), ell_plus(&other));
        let g = (0..raw.ell)
            .flat_map(|k| raw.avail[k].iter().map(move |&p| (k, p)))
            .map(|(k, p)| (0..raw.n).filter(|&i| raw.lists[i][k].contains(&p)).count())
            .max()
            .unwrap_or(0);
        prop_assert_eq!(gamma(&inst), g);
    }

    #[test]
    fn oracle_matches_brute_force(
        (raw, ps) in raw_instance(3, 3, 4).prop_flat_map(|raw| { let ell = raw.ell; (Just(raw), constraint_pairs(ell)) })
    ) {
        let inst = raw.build();
        let cs = ConstraintSet::new(ps.clone()).unwrap();
        let report = enumerate_optimal(&inst, &cs, &Budget::default()).unwrap();
        let expect = raw.optima(&ps);
        prop_assert_eq!(report.feasible, expect.is_some());
        prop_assert_eq!(report.min_sum.as_ref().map(|o| o.value), expect.map(|e| e.0));
        prop_assert_eq!(report.min_max.as_ref().map(|o| o.value), expect.map(|e| e.1));
        if let Some(o) = &report.min_max {
            // lexicographically smallest witness
            let first = raw
                .outcomes()
                .into_iter()
                .find(|s| raw.ok(s, &ps) && *raw.costs(s).iter().max().unwrap() == o.value)
                .unwrap();
            prop_assert_eq!(o.outcome.selections(), first.as_slice());
        }
        prop_assert_eq!(report.visited as usize, raw.outcomes().len());
    }

    #[test]
    fn loosening_keeps_feasibility(
        (raw, ps) in raw_instance(3, 3, 4).prop_flat_map(|raw| { let ell = raw.ell; (Just(raw), constraint_pairs(ell)) })
    ) {
        let inst = raw.build();
        let tight = ConstraintSet::new(ps.clone()).unwrap();
        let loose = ConstraintSet::new(ps.iter().map(|&(t, l)| (t, (l + 1).min(raw.ell))).collect()).unwrap();
        let b = Budget::default();
        let a = enumerate_optimal(&inst, &tight, &b).unwrap();
        let c = enumerate_optimal(&inst, &loose, &b).unwrap();
        prop_assert!(!a.feasible || c.feasible);
        if let (Some(x), Some(y)) = (&a.min_max, &c.min_max) {
            prop_assert!(y.value <= x.value);
        }
        let none = enumerate_optimal(&inst, &ConstraintSet::empty(), &b).unwrap();
        prop_assert!(none.feasible);
    }

    #[test]
    fn greedy_is_minsum_optimal(raw in raw_instance(3, 3, 4)) {
        let inst = raw.build();
        let g = greedy_minsum(&inst);
        let (sum, _) = raw.optima(&[]).unwrap();
        prop_assert_eq!(Objective::MinSum.value(&inst, &g), sum);
    }

    #[test]
    fn dp_decides_feasibility(
        (raw, ps) in raw_instance(3, 3, 4).prop_flat_map(|raw| { let ell = raw.ell; (Just(raw), constraint_pairs(ell)) })
    ) {
        let inst = raw.build();
        let cs = ConstraintSet::new(ps.clone()).unwrap();
        let got = solve_dp(&inst, &cs, &Budget::default()).unwrap();
        prop_assert_eq!(got.is_some(), raw.optima(&ps).is_some());
        if let Some(o) = got {
            prop_assert!(satisfies(&inst, &o, &cs));
        }
        let layers = run_dp(&inst, &cs, &Budget::default()).unwrap();
        prop_assert_eq!(layers.feasible(), raw.optima(&ps).is_some());
    }

    #[test]
    fn minmax_search_matches(raw in raw_instance(3, 3, 4)) {
        let inst = raw.build();
        let (value, out) = minimize_minmax(&inst, &Budget::default()).unwrap();
        prop_assert_eq!(value, raw.optima(&[]).unwrap().1);
        prop_assert_eq!(Objective::MinMax.value(&inst, &out), value);
    }

    #[test]
    fn compressed_program_matches(
        (raw, ps) in raw_instance(3, 3, 4).prop_flat_map(|raw| { let ell = raw.ell; (Just(raw), constraint_pairs(ell)) })
    ) {
        let inst = raw.build();
        let cs = ConstraintSet::new(ps.clone()).unwrap();
        let program = compress_types(&inst, &cs, &Budget::default()).unwrap();
        let x = solve_compressed(&program, &Budget::default()).unwrap();
        prop_assert_eq!(x.is_some(), raw.optima(&ps).is_some());
        if let Some(x) = x {
            prop_assert!(program.is_feasible_assignment(&x));
        }
        let out = solve_ilp(&inst, &cs, &Budget::default()).unwrap();
        prop_assert_eq!(out.is_some(), raw.optima(&ps).is_some());
        if let Some(o) = out {
            prop_assert!(satisfies(&inst, &o, &cs));
        }
    }

    #[test]
    fn gamma1_matches_dp(
        (raw, ps) in gamma1_raw().prop_flat_map(|raw| { let ell = raw.ell; (Just(raw), constraint_pairs(ell)) })
    ) {
        let inst = raw.build();
        prop_assert!(gamma(&inst) <= 1);
        let cs = ConstraintSet::new(ps).unwrap();
        let a = solve_gamma1(&inst, &cs).unwrap();
        let b = solve_dp(&inst, &cs, &Budget::default()).unwrap();
        prop_assert_eq!(a.is_some(), b.is_some());
        if let Some(o) = a {
            prop_assert!(satisfies(&inst, &o, &cs));
        }
    }

    #[test]
    fn matching_edges_are_downward_closed(
        (raw, ps) in gamma1_raw().prop_flat_map(|raw| { let ell = raw.ell; (Just(raw), constraint_pairs(ell)) })
    ) {
        let inst = raw.build();
        let cs = ConstraintSet::new(ps).unwrap();
        let g = MatchingGraph::build(&inst, &cs).unwrap();
        for &k in g.timesteps() {
            for i in 0..raw.n {
                for level in 2..=g.levels() {
                    if g.has_edge(i, level, k) {
                        prop_assert!(g.has_edge(i, level - 1, k));
                    }
                }
            }
        }
    }
}

#[test]
fn gamma1_refuses_shared_disapproval() {
    let inst = chorevote::Instance::from_lists(2, 2, 1, &[vec![vec![0]], vec![vec![0]]]).unwrap();
    assert!(solve_gamma1(&inst, &ConstraintSet::single(1, 0)).is_err());
}

#[test]
fn pairs_helper_round_trips() {
    let cs = ConstraintSet::new(vec![(1, 0), (3, 2)]).unwrap();
    assert_eq!(pairs(&cs), vec![(1, 0), (3, 2)]);
}
