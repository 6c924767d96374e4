//! Seeded generators shared by the experiments, property tests and CLI.
//!
//! All randomness is ChaCha8 seeded from a `u64`. Repetition `r` of a run
//! with master seed `s` uses ChaCha stream `r` of seed `s` (see
//! [`split`]), so results are reproducible across platforms and
//! independent of how repetitions are scheduled.

use rand::{Rng as _, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::model::{ConstraintSet, Instance, InstanceBuilder};

pub type Rng = ChaCha8Rng;

pub fn rng(seed: u64) -> Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Generator for repetition `index` of a run seeded with `master`.
pub fn split(master: u64, index: u64) -> Rng {
    let mut r = ChaCha8Rng::seed_from_u64(master);
    r.set_stream(index);
    r
}

/// Instance with the given dimensions; each `(agent, timestep, project)`
/// triple is a disapproval independently with probability `density`.
pub fn random_instance(rng: &mut Rng, n: usize, m: usize, ell: usize, density: f64) -> Instance {
    let mut b = InstanceBuilder::new(n, m, ell);
    for i in 0..n {
        for k in 0..ell {
            for p in 0..m {
                if rng.gen_bool(density) {
                    b.disapprove(i, k, p);
                }
            }
        }
    }
    b.build().expect("dimensions are positive")
}

/// Dimensions drawn uniformly from `1..=max_*`, density from a small menu
/// so that sparse (γ ≤ 1) and dense instances both occur.
pub fn random_small_instance(
    rng: &mut Rng,
    max_n: usize,
    max_m: usize,
    max_ell: usize,
) -> Instance {
    const DENSITIES: [f64; 4] = [0.15, 0.3, 0.5, 0.7];
    let n = rng.gen_range(1..=max_n);
    let m = rng.gen_range(1..=max_m);
    let ell = rng.gen_range(1..=max_ell);
    let density = DENSITIES[rng.gen_range(0..DENSITIES.len())];
    random_instance(rng, n, m, ell, density)
}

/// Instance with γ ≤ 1: every `(timestep, project)` has at most one
/// disapprover, present with probability `fill`.
pub fn random_gamma1_instance(
    rng: &mut Rng,
    n: usize,
    m: usize,
    ell: usize,
    fill: f64,
) -> Instance {
    let mut b = InstanceBuilder::new(n, m, ell);
    for k in 0..ell {
        for p in 0..m {
            if rng.gen_bool(fill) {
                b.disapprove(rng.gen_range(0..n), k, p);
            }
        }
    }
    b.build().expect("dimensions are positive")
}

/// Up to `max_pairs` checkpoints with sorted timesteps and bounds.
pub fn random_constraints(rng: &mut Rng, ell: usize, max_pairs: usize) -> ConstraintSet {
    let tau = rng.gen_range(0..=max_pairs);
    let mut ts: Vec<usize> = (0..tau).map(|_| rng.gen_range(1..=ell)).collect();
    let mut ls: Vec<usize> = (0..tau).map(|_| rng.gen_range(0..=ell)).collect();
    ts.sort_unstable();
    ls.sort_unstable();
    ConstraintSet::new(ts.into_iter().zip(ls).collect()).expect("sorted pairs are monotone")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::gamma;

    #[test]
    fn seeded_generation_is_reproducible() {
        let a = random_small_instance(&mut rng(7), 3, 3, 4);
        let b = random_small_instance(&mut rng(7), 3, 3, 4);
        assert_eq!(a, b);
        let mut s1 = split(7, 1);
        let mut s2 = split(7, 2);
        assert_ne!(s1.gen::<u64>(), s2.gen::<u64>());
    }

    #[test]
    fn gamma1_generator_respects_gamma() {
        let mut r = rng(3);
        for _ in 0..50 {
            let inst = random_gamma1_instance(&mut r, 3, 3, 4, 0.8);
            assert!(gamma(&inst) <= 1);
        }
    }

    #[test]
    fn random_constraints_are_in_range() {
        let mut r = rng(1);
        for _ in 0..50 {
            let cs = random_constraints(&mut r, 4, 3);
            assert!(cs
                .pairs()
                .iter()
                .all(|c| (1..=4).contains(&c.t) && c.lambda <= 4));
        }
    }
}
