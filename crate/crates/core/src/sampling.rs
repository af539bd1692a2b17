//! Seeded sampling of "generic" vectors.
//!
//! Every random draw in the crate goes through an explicit 64-bit seed, so
//! identical inputs always give identical outputs.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exactla::{Rational, Vector};

/// Integer coordinates are drawn uniformly from `[-COORD_BOUND, COORD_BOUND]`.
pub const COORD_BOUND: i64 = 10;

/// Number of fresh draws allowed when a genericity check fails.
pub const RESAMPLE_BUDGET: usize = 8;

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Derives an independent stream seed from a base seed and a label.
pub fn derive_seed(seed: u64, label: &str) -> u64 {
    // FNV-1a over the label, mixed with the seed by splitmix64.
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in label.bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x0100_0000_01b3);
    }
    let mut z = seed ^ h;
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

pub fn random_int(rng: &mut impl Rng) -> Rational {
    Rational::from_integer(rng.gen_range(-COORD_BOUND..=COORD_BOUND))
}

pub fn random_int_vector(rng: &mut impl Rng, n: usize) -> Vector {
    (0..n).map(|_| random_int(rng)).collect()
}

/// Rational coordinates `p/q` with `p` in the coordinate range and `q` in `1..=6`.
pub fn random_rational_vector(rng: &mut impl Rng, n: usize) -> Vector {
    (0..n)
        .map(|_| Rational::new(rng.gen_range(-COORD_BOUND..=COORD_BOUND), rng.gen_range(1..=6)))
        .collect()
}
