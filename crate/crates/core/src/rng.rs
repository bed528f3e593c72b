//! Seed derivation. Every random draw in the crate comes from a ChaCha8
//! stream keyed by a 64-bit value mixed from a root seed and a path of tags.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[inline]
pub(crate) fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Derives a child key from `key` and `tag`.
#[inline]
pub(crate) fn mix(key: u64, tag: u64) -> u64 {
    splitmix64(key ^ splitmix64(tag.wrapping_add(0x6A09_E667_F3BC_C909)))
}

pub(crate) fn rng_for(key: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(key)
}

/// Uniform variate on the open interval (0, 1) from 53 random bits.
#[inline]
pub(crate) fn open_unit(bits: u64) -> f64 {
    ((bits >> 11) as f64 + 0.5) * (1.0 / (1u64 << 53) as f64)
}
