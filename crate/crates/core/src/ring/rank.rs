//! Rank of polynomial matrices over the fraction field `Frac(R)`.
//!
//! [`bareiss_rank`] runs fraction-free elimination with exact polynomial
//! division. [`rank_exact`] gives the same answer but first tries an exact
//! evaluation at a fixed point, which settles full-rank matrices without the
//! expression swell of elimination. [`rank_probabilistic`] evaluates the matrix at a
//! random point of a domain of size at least `2^61` and takes the rank there.
//! Evaluation never raises the rank; for a nonzero minor of degree `D` the
//! chance that the point is a root is at most `D / 2^61`, which stays below
//! `2^-40` as long as `D < 2^21`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::extfield::{BinaryExtension, EvalField, PrimeExtension};
use super::matrix::PolyMatrix;
use super::poly::Polynomial;
use super::scalar::Scalar;

/// Rank over `Frac(R)`. An exact evaluation at a fixed point bounds the rank
/// from below; when that bound is already `min(rows, cols)` it is the answer,
/// otherwise the rank comes from [`bareiss_rank`].
pub fn rank_exact(m: &PolyMatrix) -> usize {
    let full = m.rows().min(m.cols());
    if full > 0 && rank_probabilistic(m, 0) == full {
        return full;
    }
    bareiss_rank(m)
}

/// Rank over `Frac(R)` by Bareiss elimination, pivoting on the entry of lowest
/// total degree (fewest terms, then position, breaking ties).
pub fn bareiss_rank(m: &PolyMatrix) -> usize {
    let ring = m.ring();
    let mut a = m.to_dense_rows();
    let n = m.rows();
    let c = m.cols();
    let mut prev = Polynomial::one(ring);
    let mut rank = 0;
    for k in 0..n.min(c) {
        let mut best: Option<((u32, usize), usize, usize)> = None;
        for (i, row) in a.iter().enumerate().skip(k) {
            for (j, p) in row.iter().enumerate().skip(k) {
                if p.is_zero() {
                    continue;
                }
                let key = (p.total_degree().unwrap(), p.num_terms());
                if best.as_ref().is_none_or(|(b, _, _)| key < *b) {
                    best = Some((key, i, j));
                }
            }
        }
        let Some((_, pi, pj)) = best else {
            break;
        };
        a.swap(k, pi);
        if pj != k {
            for row in a.iter_mut() {
                row.swap(k, pj);
            }
        }
        let pivot = a[k][k].clone();
        let divide = !(prev.is_constant() && prev.constant_term().is_one());
        let (upper, lower) = a.split_at_mut(k + 1);
        let pivot_row = &upper[k];
        for row in lower.iter_mut() {
            let aik = std::mem::replace(&mut row[k], Polynomial::zero(ring));
            for j in k + 1..c {
                let akj = &pivot_row[j];
                if row[j].is_zero() && (aik.is_zero() || akj.is_zero()) {
                    continue;
                }
                let mut v = pivot.mul(&row[j]);
                if !aik.is_zero() && !akj.is_zero() {
                    v = v.sub(&aik.mul(akj));
                }
                row[j] = if divide { v.div_exact(&prev).expect("Bareiss division is exact") } else { v };
            }
        }
        prev = pivot;
        rank += 1;
    }
    rank
}

/// Rank at a random evaluation point, deterministic for a fixed seed. Always
/// a lower bound for [`rank_exact`].
pub fn rank_probabilistic(m: &PolyMatrix, seed: u64) -> usize {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let field = m.ring().field;
    match field.characteristic() {
        0 => rank_at_integer_point(m, &mut rng),
        2 => rank_at_point(m, &BinaryExtension::new(), &mut rng),
        p => rank_at_point(m, &PrimeExtension::new(p), &mut rng),
    }
}

fn rank_at_point<F: EvalField, R: Rng>(m: &PolyMatrix, f: &F, rng: &mut R) -> usize {
    let r = m.ring().num_vars;
    let point: Vec<F::Elem> = (0..r).map(|_| f.random(rng)).collect();
    let mut powers: Vec<Vec<F::Elem>> = point.iter().map(|x| vec![f.embed(1), x.clone()]).collect();
    let mut rows = vec![vec![f.zero(); m.cols()]; m.rows()];
    for (i, j, p) in m.entries() {
        let mut acc = f.zero();
        for (mono, c) in p.terms() {
            let mut v = f.embed(c.as_residue().expect("residue coefficient"));
            for (var, pw) in powers.iter_mut().enumerate() {
                let e = mono.exponent(var) as usize;
                while pw.len() <= e {
                    let next = f.mul(pw.last().unwrap(), &point[var]);
                    pw.push(next);
                }
                if e > 0 {
                    v = f.mul(&v, &pw[e]);
                }
            }
            acc = f.add(&acc, &v);
        }
        rows[i][j] = acc;
    }
    gaussian_rank(f, rows)
}

fn gaussian_rank<F: EvalField>(f: &F, mut a: Vec<Vec<F::Elem>>) -> usize {
    let n = a.len();
    let c = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..c {
        let Some(p) = (rank..n).find(|&i| !f.is_zero(&a[i][col])) else {
            continue;
        };
        a.swap(rank, p);
        let inv = f.inv(&a[rank][col]);
        let (upper, lower) = a.split_at_mut(rank + 1);
        let pivot_row = &upper[rank];
        for row in lower.iter_mut() {
            if f.is_zero(&row[col]) {
                continue;
            }
            let factor = f.mul(&row[col], &inv);
            for j in col..c {
                if !f.is_zero(&pivot_row[j]) {
                    row[j] = f.sub(&row[j], &f.mul(&factor, &pivot_row[j]));
                }
            }
        }
        rank += 1;
        if rank == n {
            break;
        }
    }
    rank
}

fn rank_at_integer_point<R: Rng>(m: &PolyMatrix, rng: &mut R) -> usize {
    let r = m.ring().num_vars;
    let bound = 1u64 << super::extfield::DOMAIN_BITS;
    let point: Vec<BigInt> = (0..r).map(|_| BigInt::from(rng.gen_range(0..bound))).collect();
    let mut rows = vec![vec![BigRational::zero(); m.cols()]; m.rows()];
    for (i, j, p) in m.entries() {
        let mut acc = BigRational::zero();
        for (mono, c) in p.terms() {
            let Scalar::Rational(q) = c else { unreachable!("rational coefficient expected") };
            let mut v = BigInt::one();
            for (var, x) in point.iter().enumerate() {
                let e = mono.exponent(var);
                if e > 0 {
                    v *= num_traits::pow(x.clone(), e as usize);
                }
            }
            acc += q * BigRational::from_integer(v);
        }
        rows[i][j] = acc;
    }
    // clear denominators row by row; this does not change the rank
    let int_rows: Vec<Vec<BigInt>> = rows
        .into_iter()
        .map(|row| {
            let l = row.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
            row.into_iter().map(|q| (q * BigRational::from_integer(l.clone())).to_integer()).collect()
        })
        .collect();
    integer_bareiss_rank(int_rows)
}

fn integer_bareiss_rank(mut a: Vec<Vec<BigInt>>) -> usize {
    let n = a.len();
    let c = a.first().map_or(0, Vec::len);
    let mut prev = BigInt::one();
    let mut rank = 0;
    for col in 0..c {
        let Some(p) = (rank..n).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        let (upper, lower) = a.split_at_mut(rank + 1);
        let pivot_row = &upper[rank];
        let pivot = pivot_row[col].clone();
        for row in lower.iter_mut() {
            let aic = std::mem::take(&mut row[col]);
            for j in col + 1..c {
                let v = &pivot * &row[j] - &aic * &pivot_row[j];
                row[j] = v / &prev;
            }
        }
        prev = pivot;
        rank += 1;
        if rank == n {
            break;
        }
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{FieldSpec, RingSpec};

    fn ring(p: u64, r: usize) -> RingSpec {
        let field = if p == 0 { FieldSpec::rationals() } else { FieldSpec::prime(p) };
        RingSpec::new(field, r, 1).unwrap()
    }

    #[test]
    fn two_by_two_symmetric() {
        let r = ring(0, 2);
        let t1 = Polynomial::var(r, 0);
        let t2 = Polynomial::var(r, 1);
        let m = PolyMatrix::from_columns(r, 2, &[vec![t1.clone(), t2.clone()], vec![t2, t1]]);
        assert_eq!(rank_exact(&m), 2);
        assert_eq!(rank_probabilistic(&m, 3), 2);
    }

    #[test]
    fn zero_matrix() {
        let r = ring(2, 2);
        let m = PolyMatrix::zeros(r, 3, 4);
        assert_eq!(rank_exact(&m), 0);
        assert_eq!(rank_probabilistic(&m, 0), 0);
    }

    #[test]
    fn rank_deficient_over_f2() {
        // columns (t1, t2) and (t1^2, t1*t2) are dependent
        let r = ring(2, 2);
        let t1 = Polynomial::var(r, 0);
        let t2 = Polynomial::var(r, 1);
        let m = PolyMatrix::from_columns(r, 2, &[vec![t1.clone(), t2.clone()], vec![t1.mul(&t1), t1.mul(&t2)]]);
        assert_eq!(rank_exact(&m), 1);
        assert_eq!(rank_probabilistic(&m, 9), 1);
    }

    #[test]
    fn rank_over_f3_extension() {
        let r = ring(3, 2);
        let t1 = Polynomial::var(r, 0);
        let t2 = Polynomial::var(r, 1);
        // t1^3 - t1 vanishes on all of F_3, but not on the extension field
        let p = t1.pow(3).sub(&t1);
        let m = PolyMatrix::from_columns(r, 2, &[vec![p, Polynomial::zero(r)], vec![Polynomial::zero(r), t2]]);
        assert_eq!(rank_exact(&m), 2);
        assert_eq!(rank_probabilistic(&m, 1), 2);
    }
}
