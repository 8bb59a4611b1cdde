//! Seeded random sampling shared by property checks and the verifier.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const DEFAULT_SEED: u64 = 0x5EED;

/// Deterministic source of uniform samples.
#[derive(Debug, Clone)]
pub struct Sampler(ChaCha8Rng);

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler(ChaCha8Rng::seed_from_u64(seed))
    }

    /// Uniform in `[-1, 1]`.
    pub fn symmetric(&mut self) -> f64 {
        self.0.gen_range(-1.0..=1.0)
    }

    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        self.0.gen_range(lo..hi)
    }

    pub fn int(&mut self, lo: i64, hi_inclusive: i64) -> i64 {
        self.0.gen_range(lo..=hi_inclusive)
    }

    /// Uniformly distributed unit vector.
    pub fn direction(&mut self) -> [f64; 3] {
        loop {
            let v = [self.symmetric(), self.symmetric(), self.symmetric()];
            let r2 = v[0] * v[0] + v[1] * v[1] + v[2] * v[2];
            if r2 > 1e-4 && r2 <= 1.0 {
                let r = r2.sqrt();
                return [v[0] / r, v[1] / r, v[2] / r];
            }
        }
    }
}

impl Default for Sampler {
    fn default() -> Self {
        Sampler::new(DEFAULT_SEED)
    }
}
