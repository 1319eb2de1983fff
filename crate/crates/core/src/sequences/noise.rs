use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

/// Counter-based uniform noise keyed by `(seed, n, i)`.
///
/// Index `n` selects a ChaCha stream and coordinate `i` a word position within
/// it, so any coordinate of any point can be regenerated without replaying the
/// stream.
#[derive(Clone, Debug)]
pub struct NoiseSource {
    rng: ChaCha8Rng,
}

impl NoiseSource {
    pub fn new(seed: u64) -> Self {
        NoiseSource { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    /// Fills `out[i]` with the uniform in `[0,1)` keyed by `(seed, n, i)`.
    pub fn fill(&mut self, n: u64, out: &mut [f64]) {
        self.rng.set_stream(n);
        self.rng.set_word_pos(0);
        for o in out.iter_mut() {
            *o = to_unit(self.rng.next_u64());
        }
    }

    pub fn value(&mut self, n: u64, i: usize) -> f64 {
        self.rng.set_stream(n);
        self.rng.set_word_pos(2 * i as u128);
        to_unit(self.rng.next_u64())
    }
}

fn to_unit(x: u64) -> f64 {
    (x >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}
