//! Seeded random polynomials and polynomial matrices for tests and surveys.

use rand::Rng;

use super::matrix::PolyMatrix;
use super::poly::{Monomial, Polynomial, RingSpec};

/// A random monomial of total degree at most `max_degree`.
pub fn random_monomial<R: Rng + ?Sized>(num_vars: usize, max_degree: u32, rng: &mut R) -> Monomial {
    let total = rng.gen_range(0..=max_degree);
    random_monomial_of_degree(num_vars, total, rng)
}

/// A random monomial of total degree exactly `degree`.
pub fn random_monomial_of_degree<R: Rng + ?Sized>(num_vars: usize, degree: u32, rng: &mut R) -> Monomial {
    let mut exps = vec![0u32; num_vars];
    for _ in 0..degree {
        exps[rng.gen_range(0..num_vars)] += 1;
    }
    Monomial::new(&exps)
}

/// A polynomial with up to `max_terms` terms of total degree at most
/// `max_degree`, possibly zero.
pub fn random_polynomial<R: Rng + ?Sized>(
    ring: RingSpec,
    max_degree: u32,
    max_terms: usize,
    rng: &mut R,
) -> Polynomial {
    let n = rng.gen_range(0..=max_terms);
    Polynomial::from_terms(
        ring,
        (0..n).map(|_| (random_monomial(ring.num_vars, max_degree, rng), ring.field.random_nonzero(rng))),
    )
}

/// A matrix whose entries are zero with probability `zero_prob` and random
/// polynomials otherwise.
pub fn random_matrix<R: Rng + ?Sized>(
    ring: RingSpec,
    rows: usize,
    cols: usize,
    max_degree: u32,
    zero_prob: f64,
    rng: &mut R,
) -> PolyMatrix {
    let mut m = PolyMatrix::zeros(ring, rows, cols);
    for j in 0..cols {
        for i in 0..rows {
            if rng.gen_bool(zero_prob) {
                continue;
            }
            m.set(i, j, random_polynomial(ring, max_degree, 3, rng));
        }
    }
    m
}
