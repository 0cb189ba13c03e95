//! Deterministic, portable random streams.
//!
//! Every random decision in the crate flows from a `u64` master seed through
//! a named stream: `derive_seed(master, tag, indices)` hashes the master
//! seed, a purpose tag and an index path with SHA-256 and takes the first
//! eight bytes as the child seed. Child seeds feed ChaCha12, which produces
//! the same sequence on every platform. Because child derivation is pure,
//! trials can run in any order or in parallel and still see identical
//! streams, and any recorded child seed replays its trial standalone.

use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use sha2::{Digest, Sha256};

/// Derives a child seed from a master seed, a purpose tag and an index path.
pub fn derive_seed(master: u64, tag: &str, indices: &[u64]) -> u64 {
    let mut hasher = Sha256::new();
    hasher.update(master.to_le_bytes());
    hasher.update((tag.len() as u64).to_le_bytes());
    hasher.update(tag.as_bytes());
    for index in indices {
        hasher.update(index.to_le_bytes());
    }
    let digest = hasher.finalize();
    u64::from_le_bytes(digest[..8].try_into().expect("digest is 32 bytes"))
}

/// A ChaCha12 generator seeded from `derive_seed(master, tag, indices)`.
pub fn stream(master: u64, tag: &str, indices: &[u64]) -> ChaCha12Rng {
    ChaCha12Rng::seed_from_u64(derive_seed(master, tag, indices))
}
