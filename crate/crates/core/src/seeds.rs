//! Deterministic random streams. Every randomized routine takes a master
//! seed and derives one independent stream per work item, so results do not
//! depend on scheduling.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Stream for item `index` under `master`. SplitMix64 mixing keeps nearby
/// indices statistically unrelated.
pub fn stream(master: u64, index: u64) -> ChaCha8Rng {
    let mut z = master ^ index.wrapping_mul(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^= z >> 31;
    ChaCha8Rng::seed_from_u64(z)
}
