//! Deterministic RNG stream derivation.
//!
//! Every random draw in the crate comes from a ChaCha stream derived from a
//! root seed plus a purpose label (and optionally an index), so independent
//! components never share a stream and parallel episode workers stay
//! order-independent.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9e3779b97f4a7c15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
    z ^ (z >> 31)
}

fn label_hash(label: &str) -> u64 {
    // FNV-1a
    let mut h: u64 = 0xcbf29ce484222325;
    for b in label.bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x100000001b3);
    }
    h
}

/// Derive an independent RNG stream from `(root, label, index)`.
pub fn derive_rng(root: u64, label: &str, index: u64) -> ChaCha8Rng {
    let mut state = root ^ label_hash(label).rotate_left(17) ^ index.wrapping_mul(0x2545f4914f6cdd1d);
    let mut seed = [0u8; 32];
    for chunk in seed.chunks_exact_mut(8) {
        chunk.copy_from_slice(&splitmix64(&mut state).to_le_bytes());
    }
    ChaCha8Rng::from_seed(seed)
}
