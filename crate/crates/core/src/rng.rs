//! Counter-based per-sample random streams.
//!
//! Sample `k` of a run with seed `s` always draws from ChaCha8 keyed by `s`
//! on stream `k`, so results do not depend on how samples are distributed
//! over workers or in which order they are evaluated.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type SampleRng = ChaCha8Rng;

/// Generator for sample `index` of a run seeded with `seed`.
pub fn sample_rng(seed: u64, index: u64) -> SampleRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}
