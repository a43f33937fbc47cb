//! Seeded generators for random exact test data.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::linalg::{rat, Rational};

pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform `p/q` with `|p| ≤ max_num`, `1 ≤ q ≤ max_den`.
pub fn random_rational<R: Rng + ?Sized>(rng: &mut R, max_num: i64, max_den: i64) -> Rational {
    rat(
        rng.random_range(-max_num..=max_num),
        rng.random_range(1..=max_den),
    )
}

/// Strictly positive `p/q` with `1 ≤ p ≤ max_num`.
pub fn random_positive_rational<R: Rng + ?Sized>(
    rng: &mut R,
    max_num: i64,
    max_den: i64,
) -> Rational {
    rat(rng.random_range(1..=max_num), rng.random_range(1..=max_den))
}

pub fn random_rationals<R: Rng + ?Sized>(
    rng: &mut R,
    len: usize,
    max_num: i64,
    max_den: i64,
) -> Vec<Rational> {
    (0..len)
        .map(|_| random_rational(rng, max_num, max_den))
        .collect()
}

pub fn random_signs<R: Rng + ?Sized>(rng: &mut R, len: usize) -> Vec<i8> {
    (0..len)
        .map(|_| if rng.random_bool(0.5) { 1 } else { -1 })
        .collect()
}
