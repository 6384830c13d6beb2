//! Seeded instance generators.
//!
//! Every generator takes an explicit RNG; [`rng_for`] derives an independent
//! ChaCha stream per instance index so that parallel runs reproduce
//! sequential ones exactly.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::f2::{mask, BitVector, GeneratorSet, LinearCode};

/// RNG for instance `index` of a run seeded with `seed`.
pub fn rng_for(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// A word of length `n` with a uniformly chosen weight in `1..=min(w, n)`
/// and a uniformly chosen support of that weight.
pub fn random_low_weight_bits<R: Rng + ?Sized>(n: usize, w: usize, rng: &mut R) -> u64 {
    let weight = rng.gen_range(1..=w.min(n));
    let mut coords: Vec<usize> = (0..n).collect();
    let (chosen, _) = coords.partial_shuffle(rng, weight);
    chosen.iter().fold(0, |acc, &c| acc | 1 << c)
}

/// Inserts random words of weight `≤ w` until their supports cover `[n]`.
pub fn random_covering_generators<R: Rng + ?Sized>(n: usize, w: usize, rng: &mut R) -> GeneratorSet {
    let mut covered = 0u64;
    let mut gens = Vec::new();
    while covered != mask(n) {
        let g = random_low_weight_bits(n, w, rng);
        covered |= g;
        gens.push(BitVector::from_bits(n, g).expect("in range"));
    }
    GeneratorSet::new(n, w, gens).expect("weights bounded by construction")
}

/// Span of a uniformly random number (`0..=n`) of uniformly random words.
pub fn random_code<R: Rng + ?Sized>(n: usize, rng: &mut R) -> LinearCode {
    let count = rng.gen_range(0..=n);
    let gens: Vec<u64> = (0..count).map(|_| rng.gen::<u64>() & mask(n)).collect();
    LinearCode::span_bits(n, &gens).expect("in range")
}

/// A pair `inner ≤ outer`: `outer` is `inner` plus a few random words.
pub fn random_nested_pair<R: Rng + ?Sized>(n: usize, rng: &mut R) -> (LinearCode, LinearCode) {
    let inner = random_code(n, rng);
    let mut outer = inner.clone();
    for _ in 0..rng.gen_range(0..=n) {
        outer.insert_bits(rng.gen::<u64>() & mask(n));
    }
    (inner, outer)
}

/// One instance of the one-step extension: a code supported on `u`, and a
/// word `b` of weight `≤ w` reaching outside `u`.
#[derive(Debug, Clone)]
pub struct ExtensionInstance {
    pub base: LinearCode,
    pub u: Vec<usize>,
    pub b: BitVector,
    pub w: usize,
}

/// Random extension instance with total length at most `max_n`.
pub fn random_extension_instance<R: Rng + ?Sized>(max_n: usize, w: usize, rng: &mut R) -> ExtensionInstance {
    let n = rng.gen_range(1..=max_n);
    let mut coords: Vec<usize> = (1..=n).collect();
    coords.shuffle(rng);
    let u_len = rng.gen_range(0..n);
    let mut u: Vec<usize> = coords[..u_len].to_vec();
    u.sort_unstable();
    let u_mask = u.iter().fold(0u64, |acc, &c| acc | 1 << (c - 1));

    let mut base = LinearCode::zero(n).expect("n ≥ 1");
    for _ in 0..rng.gen_range(0..=u_len) {
        base.insert_bits(rng.gen::<u64>() & u_mask);
    }

    // b: at least one coordinate outside u, total weight in 1..=w.
    let outside = coords[rng.gen_range(u_len..n)];
    let weight = rng.gen_range(1..=w.min(n));
    let mut rest: Vec<usize> = (1..=n).filter(|&c| c != outside).collect();
    rest.shuffle(rng);
    let mut support = vec![outside];
    support.extend_from_slice(&rest[..weight - 1]);
    let b = BitVector::from_support(n, &support).expect("in range");
    ExtensionInstance { base, u, b, w }
}
