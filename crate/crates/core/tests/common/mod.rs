#![allow(dead_code)]

use std::sync::Arc;

use descent_core::linalg::{rat, Rational};
use descent_core::{DescentAlgebra, DescentVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const SEED: u64 = 0x5eed_d35c;

pub fn rng(salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(SEED ^ salt)
}

pub fn alg(label: &str) -> Arc<DescentAlgebra> {
    DescentAlgebra::from_label(label).unwrap()
}

/// Coefficients uniform in `0..=9` on the x-basis, never all zero.
pub fn random_positive(a: &Arc<DescentAlgebra>, rng: &mut ChaCha8Rng) -> DescentVector {
    loop {
        let coeffs: Vec<Rational> = (0..a.dim()).map(|_| rat(rng.gen_range(0..=9))).collect();
        if coeffs.iter().any(|c| *c != rat(0)) {
            return a.from_x(coeffs);
        }
    }
}

/// Coefficients uniform in `-9..=9`.
pub fn random_element(a: &Arc<DescentAlgebra>, rng: &mut ChaCha8Rng) -> DescentVector {
    a.from_x((0..a.dim()).map(|_| rat(rng.gen_range(-9..=9))).collect())
}

pub fn ceil_half(n: usize) -> usize {
    n.div_ceil(2)
}
