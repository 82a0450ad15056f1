//! Deterministic seed derivation and residue sampling.
//!
//! A master seed expands into per-trial, per-attempt, and per-form streams with
//! [`mix`]: stream `i` of seed `s` is `mix(s, i)`. Streams are independent of
//! how many sibling streams exist, so adding trials never perturbs earlier
//! ones. The generator behind each stream is ChaCha12 keyed from the 64-bit
//! stream seed; residues are drawn by rejection sampling so the byte-stream to
//! residue map is pinned here and not to a distribution crate's internals.

use rand_chacha::ChaCha12Rng;
use rand_core::{RngCore, SeedableRng};

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Hash of `(seed, index)` used for every stream split.
pub fn mix(seed: u64, index: u64) -> u64 {
    splitmix64(seed ^ splitmix64(index.wrapping_add(0x9E37_79B9_7F4A_7C15)))
}

/// ChaCha12 stream keyed by a splitmix64 chain over the 64-bit seed.
pub fn rng_from_seed(seed: u64) -> ChaCha12Rng {
    let mut key = [0u8; 32];
    let mut s = seed;
    for chunk in key.chunks_exact_mut(8) {
        s = splitmix64(s);
        chunk.copy_from_slice(&s.to_le_bytes());
    }
    ChaCha12Rng::from_seed(key)
}

/// Uniform residue in `[0, p)` by rejection sampling on `next_u64`.
pub fn uniform_residue(rng: &mut impl RngCore, p: u64) -> u64 {
    debug_assert!(p > 1);
    // accept only below the largest multiple of p, so every residue is
    // equally likely
    let zone = u64::MAX - u64::MAX % p;
    loop {
        let x = rng.next_u64();
        if x < zone {
            return x % p;
        }
    }
}
