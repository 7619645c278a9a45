//! The operators `λ_i`: the coefficient of `t_i` in the differential of a
//! minimal complex, read as `k`-linear maps on the space of generators.

use super::is_minimal;
use crate::complex::FreeComplex;
use crate::error::{Error, Result};
use crate::ring::{EchelonBasis, Mat, Monomial};

#[derive(Clone, Debug)]
pub struct LambdaAction {
    degrees: Vec<i64>,
    maps: Vec<Mat>,
}

/// `λ_i[y][x]` = coefficient of `t_i` in `d[y][x]`.
pub fn lambda_ops(model: &FreeComplex) -> Result<LambdaAction> {
    if let Some((row, col, _)) = model.differential().entries().find(|(_, _, p)| !p.constant_term().is_zero()) {
        return Err(Error::NotMinimal { row, col });
    }
    debug_assert!(is_minimal(model));
    let ring = model.ring();
    let n = model.len();
    let maps = (0..ring.num_vars)
        .map(|i| {
            let t = Monomial::var_power(i, 1);
            let mut m = Mat::zeros(ring.field, n, n);
            for (y, x, p) in model.differential().entries() {
                let c = p.coefficient(&t);
                if !c.is_zero() {
                    m.set(y, x, c);
                }
            }
            m
        })
        .collect();
    Ok(LambdaAction { degrees: model.generators().iter().map(|g| g.degree).collect(), maps })
}

impl LambdaAction {
    pub fn maps(&self) -> &[Mat] {
        &self.maps
    }

    pub fn is_trivial(&self) -> bool {
        self.maps.iter().all(Mat::is_zero)
    }

    /// The first pair `(i, j)`, `i <= j`, with `λ_i λ_j + λ_j λ_i != 0`
    /// (for `i = j`, with `λ_i^2 != 0`).
    pub fn anticommutation_failure(&self) -> Option<(usize, usize)> {
        for i in 0..self.maps.len() {
            for j in i..self.maps.len() {
                let ij = self.maps[i].mul(&self.maps[j]);
                let s = if i == j { ij } else { ij.add(&self.maps[j].mul(&self.maps[i])) };
                if !s.is_zero() {
                    return Some((i, j));
                }
            }
        }
        None
    }

    /// Degrees `q` carrying at least one generator.
    pub fn degrees(&self) -> Vec<i64> {
        let mut d = self.degrees.clone();
        d.sort_unstable();
        d.dedup();
        d
    }
}

/// The least `i` with `(Λ⁺)^i H^q = 0`, where `λ_i` act through their
/// degree-`q` block `H^q → H^q`. With `deg t_i = 2` that block is zero, so
/// the value is `1` when `H^q ≠ 0`.
pub fn lambda_length(action: &LambdaAction, q: i64) -> usize {
    let idx: Vec<usize> = (0..action.degrees.len()).filter(|&k| action.degrees[k] == q).collect();
    let Some(first) = action.maps.first() else {
        return usize::from(!idx.is_empty());
    };
    let field = first.field();
    let n = idx.len();
    if n == 0 {
        return 0;
    }
    let blocks: Vec<Mat> = action
        .maps
        .iter()
        .map(|m| {
            let mut b = Mat::zeros(field, n, n);
            for (y, &ky) in idx.iter().enumerate() {
                for (x, &kx) in idx.iter().enumerate() {
                    b.set(y, x, m.get(ky, kx).clone());
                }
            }
            b
        })
        .collect();
    let mut span: Vec<Vec<_>> = (0..n)
        .map(|k| {
            let mut v = vec![field.zero(); n];
            v[k] = field.one();
            v
        })
        .collect();
    let mut length = 0;
    while !span.is_empty() {
        length += 1;
        let mut next = EchelonBasis::new(field, n);
        for v in &span {
            for b in &blocks {
                next.insert(&b.mul_vec(v));
            }
        }
        span = next.basis().cloned().collect();
    }
    length
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::koszul;
    use crate::ring::{FieldSpec, RingSpec};

    #[test]
    fn koszul_contractions() {
        for r in 1..=4 {
            let ring = RingSpec::new(FieldSpec::rationals(), r, 1).unwrap();
            let k = koszul(ring, 0);
            let a = lambda_ops(k.complex()).unwrap();
            assert!(a.anticommutation_failure().is_none());
            // d s_12 = t1 s_2 - t2 s_1
            if r >= 2 {
                let q = FieldSpec::rationals();
                let s12 = k.index_of(&[1, 2]);
                assert_eq!(a.maps()[0].get(k.index_of(&[2]), s12), &q.one());
                assert_eq!(a.maps()[1].get(k.index_of(&[1]), s12), &q.from_i64(-1));
                assert_eq!(a.maps()[0].get(k.index_of(&[1]), s12), &q.zero());
            }
            assert_eq!(lambda_length(&a, 0), r + 1);
        }
    }

    #[test]
    fn higher_koszul_has_trivial_action() {
        let ring = RingSpec::new(FieldSpec::prime(2), 3, 1).unwrap();
        let a = lambda_ops(koszul(ring, 1).complex()).unwrap();
        assert!(a.is_trivial());
        for q in 0..=3 {
            assert_eq!(lambda_length(&a, q), 1);
        }
        assert_eq!(lambda_length(&a, 4), 0);
    }

    #[test]
    fn weight_two_blocks_vanish() {
        let ring = RingSpec::new(FieldSpec::rationals(), 3, 2).unwrap();
        let a = lambda_ops(koszul(ring, 0).complex()).unwrap();
        assert!(!a.is_trivial());
        assert!(a.anticommutation_failure().is_none());
        for q in 0..=3 {
            assert_eq!(lambda_length(&a, q), 1);
        }
    }
}
