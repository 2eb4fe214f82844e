//! Seeded random polynomials for sampled operator checks.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::series::TruncatedSeries;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Degree uniform in `1..=max_degree`, coefficients standard complex normal.
pub fn random_polynomial<R: Rng>(rng: &mut R, max_degree: usize) -> TruncatedSeries {
    let degree = rng.random_range(1..=max_degree.max(1));
    random_polynomial_of_degree(rng, degree)
}

/// Exactly degree `degree` (leading coefficient nonzero almost surely).
pub fn random_polynomial_of_degree<R: Rng>(rng: &mut R, degree: usize) -> TruncatedSeries {
    let coeffs = (0..=degree)
        .map(|_| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
        .collect();
    TruncatedSeries::new(coeffs).expect("normal samples are finite")
}

/// `count` polynomials drawn from one seeded stream.
pub fn random_polynomials(seed: u64, count: usize, max_degree: usize) -> Vec<TruncatedSeries> {
    let mut rng = rng(seed);
    (0..count).map(|_| random_polynomial(&mut rng, max_degree)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_for_seed() {
        assert_eq!(random_polynomials(7, 5, 64), random_polynomials(7, 5, 64));
        assert_ne!(random_polynomials(7, 5, 64), random_polynomials(8, 5, 64));
        assert!(random_polynomials(1, 50, 16).iter().all(|p| (1..=16).contains(&p.degree())));
    }
}
