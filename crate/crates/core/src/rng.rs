//! Seeded, stream-splittable randomness.
//!
//! Every random draw in the crate goes through [`SeededRng`], a ChaCha8
//! generator (`rand_chacha::ChaCha8Rng`) keyed by a 64-bit seed and a 64-bit
//! stream id. The ChaCha stream cipher output is specified independently of
//! platform and endianness, so identical `(seed, stream)` pairs yield identical
//! draw sequences everywhere.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::scalar::Scalar;

#[derive(Clone, Debug)]
pub struct SeededRng {
    seed: u64,
    stream: u64,
    inner: ChaCha8Rng,
}

impl SeededRng {
    pub fn new(seed: u64, stream: u64) -> Self {
        let mut inner = ChaCha8Rng::seed_from_u64(seed);
        inner.set_stream(stream);
        Self {
            seed,
            stream,
            inner,
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn stream(&self) -> u64 {
        self.stream
    }

    /// Uniform draw in `[0, 1)`.
    #[inline]
    pub fn uniform(&mut self) -> f64 {
        self.inner.random::<f64>()
    }

    /// Uniform index in `0..n`.
    #[inline]
    pub fn index(&mut self, n: usize) -> usize {
        self.inner.random_range(0..n)
    }

    pub fn shuffle<X>(&mut self, items: &mut [X]) {
        items.shuffle(&mut self.inner);
    }
}

/// `d` independent uniform coordinates in the unit cube.
pub fn uniform_point<T: Scalar>(rng: &mut SeededRng, d: usize) -> Vec<T> {
    (0..d).map(|_| T::lit(rng.uniform())).collect()
}
