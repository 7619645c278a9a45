//! Minimal models: cancel generator pairs joined by a unit entry of the
//! differential until every entry lies in `(t_1, ..., t_r)`, keeping the
//! inclusion, projection and homotopy that certify the equivalence.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::chainmap::{is_chain_map, ChainMap, Homotopy};
use crate::complex::{Augmentation, FreeComplex, Generator};
use crate::error::{Error, Result};
use crate::ring::{PolyMatrix, Polynomial, Scalar};

mod lambda;

pub use lambda::{lambda_length, lambda_ops, LambdaAction};

/// Which unit entry is cancelled next.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum PivotOrder {
    /// Lowest source degree first, then lowest source index, then lowest row.
    #[default]
    Deterministic,
    /// Uniformly among all unit entries at each step.
    Seeded(u64),
}

#[derive(Clone, Debug)]
pub struct MinimalModel {
    model: FreeComplex,
    inclusion: ChainMap,
    projection: ChainMap,
    homotopy: Homotopy,
    kept: Vec<usize>,
}

/// True when every entry of the differential has zero constant term.
pub fn is_minimal(c: &FreeComplex) -> bool {
    c.differential().entries().all(|(_, _, p)| p.constant_term().is_zero())
}

fn unit_entry(d: &[Vec<Polynomial>], a: usize, b: usize) -> Result<Option<Scalar>> {
    let p = &d[a][b];
    let c = p.constant_term();
    if c.is_zero() {
        return Ok(None);
    }
    if !p.is_constant() {
        return Err(Error::InvalidComplex(format!("entry ({a}, {b}) = {p} mixes a constant with higher terms")));
    }
    Ok(Some(c))
}

pub fn minimal_model(c: &FreeComplex) -> Result<MinimalModel> {
    minimal_model_with_order(c, PivotOrder::Deterministic)
}

pub fn minimal_model_with_order(c: &FreeComplex, order: PivotOrder) -> Result<MinimalModel> {
    c.ensure_valid()?;
    let ring = c.ring();
    let n = c.len();
    let zero = Polynomial::zero(ring);
    let dense = |m: &PolyMatrix| -> Vec<Vec<Polynomial>> { m.to_dense_rows() };
    let mut d = dense(c.differential());
    let mut iota = dense(&PolyMatrix::identity(ring, n));
    let mut pi = iota.clone();
    let mut h = vec![vec![zero.clone(); n]; n];
    let mut alive = vec![true; n];
    let mut rng = match order {
        PivotOrder::Seeded(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
        PivotOrder::Deterministic => None,
    };
    loop {
        let mut pivots = Vec::new();
        let mut columns: Vec<usize> = (0..n).filter(|&j| alive[j]).collect();
        columns.sort_by_key(|&j| (c.degree(j), j));
        'scan: for &b in &columns {
            for a in (0..n).filter(|&a| alive[a]) {
                if let Some(u) = unit_entry(&d, a, b)? {
                    pivots.push((a, b, u));
                    if rng.is_none() {
                        break 'scan;
                    }
                }
            }
        }
        let Some((a, b, u)) = (match rng.as_mut() {
            Some(rng) => pivots.choose(rng).cloned(),
            None => pivots.into_iter().next(),
        }) else {
            break;
        };
        let inv = Polynomial::constant(ring, u.inv().expect("nonzero pivot"));
        let rest: Vec<usize> = (0..n).filter(|&k| alive[k] && k != a && k != b).collect();
        // H += u^{-1} ι(b) π_a, using ι and π before this step
        for v in 0..n {
            if pi[a][v].is_zero() {
                continue;
            }
            let f = pi[a][v].mul(&inv);
            for s in 0..n {
                if !iota[s][b].is_zero() {
                    h[s][v] = h[s][v].add(&iota[s][b].mul(&f));
                }
            }
        }
        for &x in &rest {
            if d[a][x].is_zero() {
                continue;
            }
            let f = d[a][x].mul(&inv);
            for row in iota.iter_mut() {
                if !row[b].is_zero() {
                    row[x] = row[x].sub(&row[b].mul(&f));
                }
            }
        }
        for &k in &rest {
            if d[k][b].is_zero() {
                continue;
            }
            let f = d[k][b].mul(&inv);
            let pivot_row = pi[a].clone();
            for (v, p) in pivot_row.iter().enumerate() {
                if !p.is_zero() {
                    pi[k][v] = pi[k][v].sub(&f.mul(p));
                }
            }
            for &x in &rest {
                if !d[a][x].is_zero() {
                    d[k][x] = d[k][x].sub(&f.mul(&d[a][x]));
                }
            }
        }
        for k in [a, b] {
            alive[k] = false;
            for row in d.iter_mut() {
                row[k] = zero.clone();
            }
            d[k] = vec![zero.clone(); n];
            for row in iota.iter_mut() {
                row[k] = zero.clone();
            }
            pi[k] = vec![zero.clone(); n];
        }
    }
    let kept: Vec<usize> = (0..n).filter(|&k| alive[k]).collect();
    let gens: Vec<Generator> = kept.iter().map(|&k| c.generators()[k].clone()).collect();
    let m = kept.len();
    let mut dm = PolyMatrix::zeros(ring, m, m);
    let mut inc = PolyMatrix::zeros(ring, n, m);
    let mut proj = PolyMatrix::zeros(ring, m, n);
    for (y, &ky) in kept.iter().enumerate() {
        for (x, &kx) in kept.iter().enumerate() {
            dm.set(y, x, d[ky][kx].clone());
        }
        for s in 0..n {
            inc.set(s, y, iota[s][ky].clone());
            proj.set(y, s, pi[ky][s].clone());
        }
    }
    let mut hm = PolyMatrix::zeros(ring, n, n);
    for (s, row) in h.into_iter().enumerate() {
        for (v, p) in row.into_iter().enumerate() {
            hm.set(s, v, p);
        }
    }
    let model = FreeComplex::new(ring, gens, dm)?;
    Ok(MinimalModel {
        inclusion: ChainMap::new(model.clone(), c.clone(), inc)?,
        projection: ChainMap::new(c.clone(), model.clone(), proj)?,
        homotopy: Homotopy::new(c.clone(), c.clone(), hm)?,
        model,
        kept,
    })
}

impl MinimalModel {
    pub fn model(&self) -> &FreeComplex {
        &self.model
    }

    pub fn source(&self) -> &FreeComplex {
        self.inclusion.target()
    }

    /// Model to source.
    pub fn inclusion(&self) -> &ChainMap {
        &self.inclusion
    }

    /// Source to model.
    pub fn projection(&self) -> &ChainMap {
        &self.projection
    }

    pub fn homotopy(&self) -> &Homotopy {
        &self.homotopy
    }

    /// Source indices of the generators that survive in the model.
    pub fn kept(&self) -> &[usize] {
        &self.kept
    }

    pub fn rank(&self) -> usize {
        self.model.len()
    }

    /// `ε ∘ inclusion`.
    pub fn pull_back(&self, augmentation: &Augmentation) -> Augmentation {
        augmentation.pull_back(self.inclusion.matrix())
    }

    /// Checks minimality, the chain-map laws, `π ι = id` and
    /// `id - ι π = d H + H d`.
    pub fn verify(&self) -> Result<()> {
        if let Some((row, col, _)) = self.model.differential().entries().find(|(_, _, p)| !p.constant_term().is_zero())
        {
            return Err(Error::NotMinimal { row, col });
        }
        is_chain_map(&self.inclusion)?;
        is_chain_map(&self.projection)?;
        let ring = self.model.ring();
        let pi_iota = self.projection.matrix().mul(self.inclusion.matrix());
        if pi_iota != PolyMatrix::identity(ring, self.model.len()) {
            return Err(Error::InvalidComplex("projection after inclusion is not the identity".into()));
        }
        let src = self.source();
        let h = self.homotopy.matrix();
        let lhs =
            PolyMatrix::identity(ring, src.len()).try_sub(&self.inclusion.matrix().mul(self.projection.matrix()))?;
        let rhs = src.differential().mul(h).try_add(&h.mul(src.differential()))?;
        if lhs != rhs {
            return Err(Error::InvalidComplex("id - inclusion * projection differs from dH + Hd".into()));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{homology_k, koszul, tensor_quotient};
    use crate::ring::{FieldSpec, RingSpec};

    fn pair(ring: RingSpec) -> FreeComplex {
        let mut d = PolyMatrix::zeros(ring, 2, 2);
        d.set(1, 0, Polynomial::one(ring));
        FreeComplex::new(ring, vec![Generator::new("e1", 0), Generator::new("e2", 1)], d).unwrap()
    }

    #[test]
    fn contractible_pair_vanishes() {
        let ring = RingSpec::new(FieldSpec::rationals(), 1, 1).unwrap();
        let c = pair(ring);
        assert!(!is_minimal(&c));
        let mm = minimal_model(&c).unwrap();
        mm.verify().unwrap();
        assert_eq!(mm.rank(), 0);
        assert_eq!(mm.homotopy().matrix().entry(0, 1), Polynomial::one(ring));
        assert!(mm.homotopy().matrix().column(0).is_empty());
    }

    #[test]
    fn koszul_is_its_own_model() {
        let ring = RingSpec::new(FieldSpec::prime(2), 3, 1).unwrap();
        let k = koszul(ring, 0);
        assert!(is_minimal(k.complex()));
        let mm = minimal_model(k.complex()).unwrap();
        mm.verify().unwrap();
        assert_eq!(mm.model(), k.complex());
        assert!(mm.homotopy().matrix().is_zero());
    }

    #[test]
    fn koszul_plus_pair() {
        let ring = RingSpec::new(FieldSpec::rationals(), 1, 1).unwrap();
        let k = koszul(ring, 0);
        let c = k.complex().direct_sum(&pair(ring), "").unwrap();
        let mm = minimal_model(&c).unwrap();
        mm.verify().unwrap();
        assert_eq!(mm.rank(), 2);
        assert_eq!(mm.model(), k.complex());
    }

    #[test]
    fn twisted_pair_keeps_homology() {
        // d a = 2b + t1 c, d z = c: both pairs cancel
        let ring = RingSpec::new(FieldSpec::prime(3), 1, 1).unwrap();
        let mut d = PolyMatrix::zeros(ring, 4, 4);
        d.set(1, 0, Polynomial::constant(ring, FieldSpec::prime(3).from_i64(2)));
        d.set(2, 0, Polynomial::var(ring, 0));
        d.set(2, 3, Polynomial::one(ring));
        let gens =
            vec![Generator::new("a", 0), Generator::new("b", 1), Generator::new("c", 0), Generator::new("z", -1)];
        let c = FreeComplex::validated(ring, gens, d).unwrap();
        let mm = minimal_model(&c).unwrap();
        mm.verify().unwrap();
        let oracle = homology_k(tensor_quotient(&c, &[1]).unwrap().complex()).total_dim();
        assert_eq!(mm.rank(), oracle);
        assert_eq!(oracle, 0);
    }

    #[test]
    fn mixed_pivot_entry_rejected() {
        let ring = RingSpec::new(FieldSpec::rationals(), 1, 1).unwrap();
        let mut d = PolyMatrix::zeros(ring, 2, 2);
        d.set(1, 0, Polynomial::one(ring).add(&Polynomial::var(ring, 0)));
        let c = FreeComplex::new(ring, vec![Generator::new("e1", 0), Generator::new("e2", 1)], d).unwrap();
        assert!(minimal_model(&c).is_err());
    }
}
