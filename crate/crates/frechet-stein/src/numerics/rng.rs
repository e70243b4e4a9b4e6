//! Seedable, splittable uniform random streams.
//!
//! ChaCha8 keyed by `(seed, stream_id)` gives bitwise-identical sequences on
//! every platform, and independent streams let parallel Monte Carlo stay
//! reproducible for any worker count: give each work unit its own stream id
//! and never share a stream between threads.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_core::RngCore;

#[derive(Debug, Clone)]
pub struct RngStream {
    seed: u64,
    stream_id: u64,
    rng: ChaCha8Rng,
}

impl RngStream {
    pub fn new(seed: u64, stream_id: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream_id);
        RngStream { seed, stream_id, rng }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn stream_id(&self) -> u64 {
        self.stream_id
    }

    /// Uniform draw on the open interval (0, 1): 53 random bits offset by
    /// half an ulp, so 0 and 1 are never returned and quantile transforms
    /// stay finite.
    pub fn next_uniform(&mut self) -> f64 {
        let bits = self.rng.next_u64() >> 11;
        (bits as f64 + 0.5) * (1.0 / (1u64 << 53) as f64)
    }
}
