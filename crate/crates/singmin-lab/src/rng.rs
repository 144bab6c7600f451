//! Counter-based random streams.
//!
//! Every draw site is keyed by `(seed, stream tag, draw index, lane)` and
//! gets its own ChaCha8 instance, so any draw can be produced in isolation:
//! no generator state is shared between samples, and Monte Carlo results do
//! not depend on how work is split across threads.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Master seed for an experiment. Plain 64-bit value, copied everywhere.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Seed(pub u64);

/// A cheap pseudo-random generator keyed injectively by the full index
/// tuple. Distinct tuples give independent streams.
pub fn stream(seed: Seed, tag: u64, index: u64, lane: u64) -> ChaCha8Rng {
    let mut key = [0u8; 32];
    key[0..8].copy_from_slice(&seed.0.to_le_bytes());
    key[8..16].copy_from_slice(&tag.to_le_bytes());
    key[16..24].copy_from_slice(&index.to_le_bytes());
    key[24..32].copy_from_slice(&lane.to_le_bytes());
    ChaCha8Rng::from_seed(key)
}
