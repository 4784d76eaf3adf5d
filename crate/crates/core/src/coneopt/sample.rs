use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::rays::{enumerate_rays_with_limit, DEFAULT_RAY_LIMIT};
use crate::exactnum::Rat;
use crate::graph::{Divisor, ValidGraph};
use crate::invariants;

/// Cone generators: the extreme rays when enumerable, otherwise `m` together
/// with the optimal vertices of the pinned LPs (whichever lie in the cone).
fn generators(g: &ValidGraph, limit: usize) -> Vec<Divisor> {
    if let Ok(family) = enumerate_rays_with_limit(g, limit) {
        return family.rays;
    }
    let mut gens = alloc::vec![Divisor::fundamental(g)];
    for p in 0..g.len() {
        if let Ok(Some(opt)) = super::pinned_optimum(g, p) {
            if !gens.contains(&opt.vertex) {
                gens.push(opt.vertex);
            }
        }
    }
    gens.retain(|a| invariants::in_psef_cone(g, a).is_ok_and(|c| c.in_cone));
    gens
}

/// `count` cone members, deterministic in `seed`.
///
/// Each sample is a non-negative rational combination of the generators:
/// every generator is kept with probability 1/2 and weighted by `k/d` with
/// `k` in `0..=12`, `d` in `1..=6`. At least one weight is positive, so the
/// zero divisor is never produced.
pub fn sample_cone(g: &ValidGraph, count: usize, seed: u64) -> Vec<Divisor> {
    sample_cone_with_limit(g, count, seed, DEFAULT_RAY_LIMIT)
}

pub fn sample_cone_with_limit(
    g: &ValidGraph,
    count: usize,
    seed: u64,
    limit: usize,
) -> Vec<Divisor> {
    if count == 0 {
        return Vec::new();
    }
    let gens = generators(g, limit);
    if gens.is_empty() {
        return Vec::new();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let mut weights: Vec<Rat> = gens
                .iter()
                .map(|_| {
                    if rng.gen_bool(0.5) {
                        Rat::ratio(rng.gen_range(0..=12), rng.gen_range(1..=6))
                    } else {
                        Rat::zero()
                    }
                })
                .collect();
            if weights.iter().all(Rat::is_zero) {
                let k = rng.gen_range(0..gens.len());
                weights[k] = Rat::one();
            }
            let coeffs = (0..g.len())
                .map(|i| {
                    gens.iter()
                        .zip(&weights)
                        .filter(|(_, w)| !w.is_zero())
                        .map(|(r, w)| &r.coefficients()[i] * w)
                        .sum()
                })
                .collect();
            Divisor::new(coeffs).expect("non-negative combination")
        })
        .collect()
}
