//! Deterministic per-trial random streams.
//!
//! A trial's generator depends only on the master seed and the trial's
//! coordinates, never on which worker runs it.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// SplitMix64 finalizer.
pub fn mix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Generator for the trial at `coords` (e.g. `[grid_index, trial_index]`).
pub fn trial_rng(master_seed: u64, coords: &[u64]) -> ChaCha8Rng {
    let stream = coords.iter().fold(0x5eed_u64, |acc, &c| mix64(acc ^ mix64(c)));
    let mut rng = ChaCha8Rng::seed_from_u64(master_seed);
    rng.set_stream(stream);
    rng
}
