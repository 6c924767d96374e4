mod common;

use chorevote::experiments::{
    gen_family, measure_cr, measure_family_potf, random_split_instance, Family, OnlineChoice,
    SplitSequence,
};
use chorevote::greedy::FnAlgorithm;
use chorevote::io::{instance_to_json, parse_instance};
use chorevote::random::rng;
use chorevote::{
    disutilities, enumerate_optimal, greedy_minsum, run_online, Budget, Column, ConstraintSet,
    Greedy, Objective, OnlineState, Outcome,
};
use common::raw_instance;
use num::rational::Ratio;
use proptest::prelude::*;

fn all_families() -> Vec<Family> {
    let mut v = Vec::new();
    for n in 2..=6 {
        v.push(Family::PotfMinSum { n });
        v.push(Family::CrGreedyMinMax { n });
        v.push(Family::PropImpossible { n, ell: n + 1 });
        for tau in 1..=4 {
            v.push(Family::PotfMinMax { n, tau });
        }
    }
    for n in 3..=6 {
        v.push(Family::Poe { n });
    }
    for k in 1..=4 {
        v.push(Family::CrGreedyMinSum { k });
        v.push(Family::RandomSplit { k, seed: k as u64 });
    }
    v
}

#[test]
fn families_survive_serialization() {
    for family in all_families() {
        let f = gen_family(family).unwrap();
        let text = instance_to_json(&f.instance, Some(&f.constraints));
        let (inst, cs) = parse_instance(&text).unwrap();
        assert_eq!(inst, f.instance, "{family:?}");
        assert_eq!(cs, f.constraints, "{family:?}");
        assert_eq!(
            gen_family(family).unwrap(),
            f,
            "{family:?} is not deterministic"
        );
    }
}

#[test]
fn family_names_parse_back() {
    for family in all_families() {
        let (n, k, tau, ell, seed) = match family {
            Family::PotfMinSum { n } | Family::Poe { n } | Family::CrGreedyMinMax { n } => {
                (Some(n), None, None, None, 0)
            }
            Family::PotfMinMax { n, tau } => (Some(n), None, Some(tau), None, 0),
            Family::PropImpossible { n, ell } => (Some(n), None, None, Some(ell), 0),
            Family::CrGreedyMinSum { k } => (None, Some(k), None, None, 0),
            Family::RandomSplit { k, seed } => (None, Some(k), None, None, seed),
        };
        assert_eq!(
            Family::from_parts(family.name(), n, k, tau, ell, seed).unwrap(),
            family
        );
    }
    assert!(Family::from_parts("potf-minmax", Some(3), None, None, None, 0).is_err());
    assert!(Family::from_parts("nope", Some(3), None, None, None, 0).is_err());
}

#[test]
fn potf_minsum_even_n() {
    for n in [2, 4, 6, 8] {
        let r = measure_family_potf(
            Family::PotfMinSum { n },
            Objective::MinSum,
            &Budget::default(),
        )
        .unwrap()
        .unwrap();
        assert_eq!(r.ratio, Ratio::new(n as i64, 2));
    }
}

#[test]
fn randomsplit_core_and_offline() {
    let b = Budget::default();
    for seed in 0..20 {
        let seq = SplitSequence::draw(3, seed).unwrap();
        assert_eq!(seq.core().len(), 1);
        let inst = random_split_instance(&seq).unwrap();
        let opt = enumerate_optimal(&inst, &ConstraintSet::empty(), &b).unwrap();
        assert_eq!(opt.min_max.unwrap().value, 1);
        // picking the right half's project every step is optimal
        let sel: Vec<usize> = seq.flips.iter().map(|&f| if f { 0 } else { 1 }).collect();
        let d = disutilities(&inst, &Outcome::new(sel), inst.ell());
        assert_eq!(d.into_iter().max(), Some(1));
    }
}

#[test]
fn cr_families_hit_their_ratios() {
    let b = Budget::default();
    for k in [2, 3, 4] {
        let r = measure_cr(
            Family::CrGreedyMinSum { k },
            OnlineChoice::Greedy(Greedy::MinSum),
            1,
            0,
            &b,
        )
        .unwrap();
        assert_eq!(r.ratio, Ratio::from_integer(k as i64));
    }
    for n in [2, 4] {
        let r = measure_cr(
            Family::CrGreedyMinMax { n },
            OnlineChoice::Greedy(Greedy::MinMax),
            1,
            0,
            &b,
        )
        .unwrap();
        assert_eq!(r.ratio, Ratio::new(n as i64, 2));
    }
    let a = measure_cr(
        Family::RandomSplit { k: 3, seed: 4 },
        OnlineChoice::Uniform,
        64,
        4,
        &b,
    )
    .unwrap();
    let again = measure_cr(
        Family::RandomSplit { k: 3, seed: 4 },
        OnlineChoice::Uniform,
        64,
        4,
        &b,
    )
    .unwrap();
    assert_eq!(a, again);
    assert_eq!(a.denominator, Ratio::from_integer(1));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn online_runs_only_see_the_past(raw in raw_instance(3, 3, 4)) {
        let inst = raw.build();
        let mut seen = Vec::new();
        let mut probe = FnAlgorithm(|revealed: &[Column], state: &OnlineState| {
            seen.push((revealed.len(), state.k));
            Ok(revealed.last().unwrap().available.iter().next().unwrap())
        });
        run_online(&inst, &mut probe).unwrap();
        let expect: Vec<(usize, usize)> = (0..raw.ell).map(|k| (k + 1, k)).collect();
        prop_assert_eq!(seen, expect);
        prop_assert_eq!(run_online(&inst, &mut Greedy::MinSum).unwrap(), greedy_minsum(&inst));
        let mm = run_online(&inst, &mut Greedy::MinMax).unwrap();
        prop_assert!(mm.validate(&inst).is_ok());
    }
}

#[test]
fn split_draw_is_seeded() {
    let a = SplitSequence::draw_from(4, 9, &mut rng(9)).unwrap();
    assert_eq!(a, SplitSequence::draw(4, 9).unwrap());
}
