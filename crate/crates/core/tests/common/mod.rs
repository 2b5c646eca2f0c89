//! Source generators shared by the integration tests.
#![allow(dead_code)]

use prefix_compete::{LengthProfile, Rational, Source};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Integer weights in `1..=max`, unnormalized.
pub fn random_weights<R: Rng>(rng: &mut R, n: usize, max: u64) -> Vec<u64> {
    (0..n).map(|_| rng.random_range(1..=max)).collect()
}

/// Exact source proportional to `weights`.
pub fn exact_source(weights: &[u64]) -> Source {
    let total: u64 = weights.iter().sum();
    let probs = weights.iter().map(|&w| Rational::new(w, total)).collect();
    Source::new(probs).expect("positive weights")
}

pub fn random_exact_source<R: Rng>(rng: &mut R, n: usize) -> Source {
    exact_source(&random_weights(rng, n, 1000))
}

/// Dyadic source `2^-l` for a random complete profile grown by splitting
/// random leaves.
pub fn random_dyadic_source<R: Rng>(rng: &mut R, n: usize) -> (Source, LengthProfile) {
    let mut lengths = vec![0u32];
    while lengths.len() < n {
        let i = rng.random_range(0..lengths.len());
        lengths[i] += 1;
        let l = lengths[i];
        lengths.push(l);
    }
    let probs = lengths.iter().map(|&l| Rational::pow2_neg(l)).collect();
    (
        Source::new(probs).expect("complete profile"),
        LengthProfile::new(lengths).expect("valid lengths"),
    )
}

/// Kraft sums in units of `2^-bits`, indexed by subset mask.
pub fn mask_sums(values: &[u128]) -> Vec<u128> {
    let n = values.len();
    let mut sums = vec![0u128; 1 << n];
    for mask in 1usize..1 << n {
        let low = mask.trailing_zeros() as usize;
        sums[mask] = sums[mask & (mask - 1)] + values[low];
    }
    sums
}

/// Weight vectors of a size in `n`. Small `max` makes ties common, which
/// is where tie-breaking matters.
pub fn weights(n: std::ops::RangeInclusive<usize>, max: u64) -> impl Strategy<Value = Vec<u64>> {
    n.prop_flat_map(move |n| prop::collection::vec(1..=max, n))
}
