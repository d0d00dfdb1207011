//! Seeded random streams.
//!
//! Every random draw in the crate comes from ChaCha20 keyed by
//! `ChaCha20Rng::seed_from_u64(seed)`, with the 64-bit stream id selecting an
//! independent substream: the top byte names the purpose, the low 56 bits an
//! index (realization number, trial number). Both the key schedule and the
//! stream layout are platform independent, so seeded outputs are bit-identical
//! everywhere.

use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[repr(u8)]
pub enum Purpose {
    Points = 1,
    Times = 2,
    Factorized = 3,
    Spectral = 4,
}

/// Substream `index` of `purpose` under `seed`.
pub fn substream(seed: u64, purpose: Purpose, index: u64) -> ChaCha20Rng {
    debug_assert!(index < 1 << 56);
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    rng.set_stream(((purpose as u64) << 56) | (index & ((1 << 56) - 1)));
    rng
}

/// Child seed for numbered sub-experiments (SplitMix64 finalizer).
pub fn derive_seed(seed: u64, index: u64) -> u64 {
    let mut z = seed
        .wrapping_add(0x9E37_79B9_7F4A_7C15)
        .wrapping_add(index.wrapping_mul(0xBF58_476D_1CE4_E5B9));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}
