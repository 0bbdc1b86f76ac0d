//! Seeded random inputs: rationals, constants, skew matrices and the
//! standard test suite of specs.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::linalg::{RectMatrix, UpperTriMatrix};
use crate::ring::{rat, Poly, Rational};
use crate::schur::ExtendedStrictPartition;
use crate::tau::TauSpec;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `p/q` with `|p| ≤ 4`, `1 ≤ q ≤ 3`.
pub fn random_rational<R: Rng>(rng: &mut R) -> Rational {
    rat(rng.gen_range(-4..=4), rng.gen_range(1..=3))
}

/// One constant sequence `c_1..c_support` per part.
pub fn random_constants<R: Rng>(rng: &mut R, parts: usize, support: usize) -> Vec<Vec<Rational>> {
    (0..parts).map(|_| (0..support).map(|_| random_rational(rng)).collect()).collect()
}

pub fn random_upper<R: Rng>(rng: &mut R, n: usize) -> UpperTriMatrix {
    UpperTriMatrix::from_fn(n, |_, _| Poly::rational(random_rational(rng)))
}

pub fn random_rect<R: Rng>(rng: &mut R, rows: usize, cols: usize) -> RectMatrix {
    RectMatrix::from_fn(rows, cols, |_, _| Poly::rational(random_rational(rng)))
}

/// Every extended strict partition with `λ_1 ≤ 3` and length 2 or 4,
/// each once with zero constants and once with seeded random constants
/// supported on `j ≤ 3`.
pub fn suite(seed: u64) -> Vec<TauSpec> {
    let mut r = rng(seed);
    let mut out = Vec::new();
    for len in [2, 4] {
        for lambda in ExtendedStrictPartition::all_with(3, len) {
            let parts = lambda.parts().to_vec();
            out.push(TauSpec::zero_constants(parts.clone()).expect("valid partition"));
            let c = random_constants(&mut r, parts.len(), 3);
            out.push(TauSpec::new(parts, c).expect("valid partition"));
        }
    }
    out
}

pub const SUITE_SEED: u64 = 20240611;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_shape() {
        let s = suite(SUITE_SEED);
        let lambdas: Vec<Vec<u32>> = s.iter().step_by(2).map(|t| t.parts().to_vec()).collect();
        assert_eq!(lambdas.len(), 7, "{lambdas:?}");
        assert!(lambdas.contains(&vec![3, 2, 1, 0]));
        assert!(lambdas.contains(&vec![1, 0]));
        assert!(s[1].constants.iter().all(|c| c.len() == 3));
        assert_eq!(suite(SUITE_SEED), s);
    }
}
