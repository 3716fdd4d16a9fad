//! Deterministic random streams.
//!
//! Each run owns one `SimRng` seeded from a 64-bit seed. Replication `r` of a
//! batch gets its own seed derived from the master seed, so replications can
//! run in any order or in parallel and still reproduce bit for bit.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type SimRng = ChaCha8Rng;

pub fn seeded(seed: u64) -> SimRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// SplitMix64 finalizer.
fn mix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed of replication `replication` under `master`.
pub fn replication_seed(master: u64, replication: u64) -> u64 {
    mix(master ^ mix(replication))
}
