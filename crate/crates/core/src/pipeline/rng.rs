//! The seeded randomness contract: one named generator (ChaCha8), one master
//! seed, and fixed stream ids per purpose. Per-clique substreams make
//! sparsification reproducible regardless of worker scheduling.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Name recorded in every artifact that consumed randomness. Bump when the
/// stream layout or generator changes.
pub const RNG_CONTRACT: &str = "chacha8-fixed-streams-v1";

const STREAM_VERTEX_SAMPLE: u64 = 1 << 40;
const STREAM_AUDIT_BASE: u64 = 1 << 41;

/// Substream for the random bipartition of one clique.
pub fn clique_rng(seed: u64, clique_id: u64) -> ChaCha8Rng {
    debug_assert!(clique_id < STREAM_VERTEX_SAMPLE);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(clique_id);
    rng
}

/// Substream for vertex sampling in the certification step.
pub fn vertex_sample_rng(seed: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(STREAM_VERTEX_SAMPLE);
    rng
}

/// Substream for one distribution-audit trial.
pub fn audit_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(STREAM_AUDIT_BASE + trial);
    rng
}
