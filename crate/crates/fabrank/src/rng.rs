//! Deterministic RNG derivation. Every random choice in the crate flows from
//! a (seed, tag) pair so results are reproducible and order-independent.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sha2::{Digest, Sha256};

/// Derives an independent RNG stream from a base seed and a string tag.
pub(crate) fn keyed_rng(seed: u64, tag: &str) -> ChaCha8Rng {
    let mut hasher = Sha256::new();
    hasher.update(seed.to_le_bytes());
    hasher.update(tag.as_bytes());
    let digest = hasher.finalize();
    let mut key = [0u8; 32];
    key.copy_from_slice(&digest);
    ChaCha8Rng::from_seed(key)
}
