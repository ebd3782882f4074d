//! Seeded pseudo-random numbers.
//!
//! The generator is splitmix64. Sub-streams are derived by mixing a label into
//! the parent seed, so independent stages of a run never share a stream.

use rand_core::{Rng, SeedableRng};
use rand_xoshiro::SplitMix64;

#[derive(Debug, Clone)]
pub struct Prng {
    inner: SplitMix64,
}

impl Prng {
    pub fn new(seed: u64) -> Self {
        Prng {
            inner: SplitMix64::seed_from_u64(seed),
        }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.inner.next_u64()
    }

    /// Uniform integer in `[0, bound)` by rejection sampling.
    pub fn below(&mut self, bound: u64) -> u64 {
        assert!(bound > 0, "empty range");
        let zone = u64::MAX - (u64::MAX % bound + 1) % bound;
        loop {
            let x = self.next_u64();
            if x <= zone {
                return x % bound;
            }
        }
    }
}

/// Deterministic seed for the sub-stream `label` of `seed`.
pub fn derive_seed(seed: u64, label: u64) -> u64 {
    let mut z = seed ^ label.wrapping_mul(0x9E37_79B9_7F4A_7C15).rotate_left(17);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Stream labels used across the crate.
pub mod streams {
    pub const INSTANCE: u64 = 1;
    pub const CHART: u64 = 2;
    pub const REDUCEDNESS: u64 = 3;
    pub const OFF_DELTA: u64 = 4;
    pub const ON_DELTA: u64 = 5;
    pub const PAIRING: u64 = 6;
    pub const SMOOTHNESS: u64 = 7;
    pub const LINES: u64 = 8;
}
