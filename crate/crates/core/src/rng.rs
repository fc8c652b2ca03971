//! Counter-based random streams.
//!
//! Every experiment derives an independent ChaCha20 stream per trial from
//! `(seed, trial index)`, so trials can run in any order or in parallel and
//! still draw identical numbers.

use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;

/// Name and version recorded in experiment records.
pub const RNG_NAME: &str = "chacha20/rand_chacha-0.3/stream-per-trial";

pub type Rng = ChaCha20Rng;

/// The stream for trial `index` of an experiment seeded with `seed`.
pub fn substream(seed: u64, index: u64) -> Rng {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Derives a child seed; used to give sub-experiments (one per `k`, say)
/// their own family of trial streams.
pub fn derive_seed(seed: u64, label: u64) -> u64 {
    use rand::RngCore;
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    rng.set_stream(u64::MAX - label);
    rng.next_u64()
}
