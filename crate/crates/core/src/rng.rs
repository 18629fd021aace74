//! Seed-derived random number streams.
//!
//! Every replication of a simulation draws from its own ChaCha stream,
//! addressed by `(master seed, block, replication)`. Streams never
//! overlap, so replications can run on any number of workers in any
//! order and still see identical randomness.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const BLOCK_SHIFT: u32 = 40;

/// Generator for stream `(block, replication)` under `master_seed`.
///
/// `block` indexes an outer loop (e.g. a parameter setting) and must be
/// below 2^24; `replication` must be below 2^40.
pub fn stream_rng(master_seed: u64, block: u64, replication: u64) -> ChaCha8Rng {
    debug_assert!(block < (1 << 24));
    debug_assert!(replication < (1 << BLOCK_SHIFT));
    let mut rng = ChaCha8Rng::seed_from_u64(master_seed);
    rng.set_stream((block << BLOCK_SHIFT) | replication);
    rng
}
