//! Random complexes with known structure: direct sums of small blocks,
//! disguised by a homogeneous change of basis and a shuffle of generators.

use rand::seq::SliceRandom;
use rand::Rng;

use super::{Augmentation, FreeComplex, Generator};
use crate::ring::random::random_monomial_of_degree;
use crate::ring::{PolyMatrix, Polynomial, RingSpec};

#[derive(Clone, Copy, Debug)]
pub struct RandomComplexOptions {
    /// Blocks are added until this many generators are reached.
    pub max_generators: usize,
    /// Block shifts are drawn from `-max_shift..=max_shift`.
    pub max_shift: i64,
    /// Conjugate by a random homogeneous unipotent change of basis.
    pub conjugate: bool,
}

impl Default for RandomComplexOptions {
    fn default() -> Self {
        Self { max_generators: 8, max_shift: 2, conjugate: true }
    }
}

#[derive(Clone, Debug)]
pub struct RandomComplex {
    pub complex: FreeComplex,
    /// Present when some Koszul block sits in shift 0; it is `1` on that
    /// block's unit.
    pub augmentation: Option<Augmentation>,
}

struct Builder {
    ring: RingSpec,
    degrees: Vec<i64>,
    entries: Vec<(usize, usize, Polynomial)>,
    unit: Option<usize>,
}

impl Builder {
    fn add(&mut self, degree: i64) -> usize {
        self.degrees.push(degree);
        self.degrees.len() - 1
    }

    /// Koszul complex on the variables in `vars` with exponent `m + 1`.
    fn koszul_block(&mut self, vars: &[usize], m: u32, shift: i64) {
        let per = if self.ring.weight == 1 { m as i64 } else { 2 * m as i64 + 1 };
        let k = vars.len();
        let base = self.degrees.len();
        for mask in 0..1u32 << k {
            self.add(shift + per * mask.count_ones() as i64);
        }
        for mask in 0..1u32 << k {
            let mut sign = false;
            for (pos, &v) in vars.iter().enumerate() {
                if mask >> pos & 1 == 0 {
                    continue;
                }
                let mut p = Polynomial::var_power(self.ring, v, m + 1);
                if sign {
                    p = p.neg();
                }
                self.entries.push((base + (mask & !(1 << pos)) as usize, base + mask as usize, p));
                sign = !sign;
            }
        }
        if shift == 0 && self.unit.is_none() {
            self.unit = Some(base);
        }
    }

    fn build<R: Rng + ?Sized>(self, conjugate: bool, rng: &mut R) -> RandomComplex {
        let ring = self.ring;
        let n = self.degrees.len();
        let mut d = PolyMatrix::zeros(ring, n, n);
        for (i, j, p) in self.entries {
            d.set(i, j, p);
        }
        let field = ring.field;
        let mut eps = self.unit.map(|u| {
            let mut v = vec![field.zero(); n];
            v[u] = field.one();
            Augmentation::new(field, v)
        });
        if conjugate {
            let p = random_unipotent(ring, &self.degrees, rng);
            let p_inv = unipotent_inverse(&p);
            d = p_inv.mul(&d).mul(&p);
            eps = eps.map(|e| e.pull_back(&p));
        }
        let mut perm: Vec<usize> = (0..n).collect();
        perm.shuffle(rng);
        let gens = (0..n).map(|i| Generator::new(format!("e{}", i + 1), self.degrees[i])).collect();
        let complex = FreeComplex::new(ring, gens, d).expect("generated names are distinct").permuted(&perm);
        let augmentation = eps.map(|e| Augmentation::new(field, perm.iter().map(|&i| e.values()[i].clone()).collect()));
        RandomComplex { complex, augmentation }
    }
}

/// `I + N` with `N` strictly upper triangular and `N_ij` homogeneous of
/// degree `deg e_j - deg e_i`.
fn random_unipotent<R: Rng + ?Sized>(ring: RingSpec, degrees: &[i64], rng: &mut R) -> PolyMatrix {
    let n = degrees.len();
    let w = ring.weight as i64;
    let mut p = PolyMatrix::identity(ring, n);
    for j in 0..n {
        for i in 0..j {
            let e = degrees[j] - degrees[i];
            if e < 0 || e % w != 0 || e / w > 3 || rng.gen_bool(0.6) {
                continue;
            }
            let terms = (0..rng.gen_range(1..=2)).map(|_| {
                (random_monomial_of_degree(ring.num_vars, (e / w) as u32, rng), ring.field.random_nonzero(rng))
            });
            p.set(i, j, Polynomial::from_terms(ring, terms));
        }
    }
    p
}

/// `(I + N)^{-1} = Σ (-N)^k` for nilpotent `N`.
fn unipotent_inverse(p: &PolyMatrix) -> PolyMatrix {
    let n = p.rows();
    let id = PolyMatrix::identity(p.ring(), n);
    let minus_n = id.try_sub(p).expect("same shape");
    let mut inv = id.clone();
    let mut power = id;
    for _ in 1..n {
        power = power.mul(&minus_n);
        if power.is_zero() {
            break;
        }
        inv = inv.try_add(&power).expect("same shape");
    }
    inv
}

pub fn random_complex<R: Rng + ?Sized>(ring: RingSpec, opts: RandomComplexOptions, rng: &mut R) -> RandomComplex {
    let mut b = Builder { ring, degrees: Vec::new(), entries: Vec::new(), unit: None };
    let w = ring.weight as i64;
    let shift = |rng: &mut R| rng.gen_range(-opts.max_shift..=opts.max_shift);
    while b.degrees.len() < opts.max_generators {
        let room = opts.max_generators - b.degrees.len();
        match rng.gen_range(0..4) {
            0 if room >= 2 => {
                let max_k = ring.num_vars.min(room.ilog2() as usize).min(3);
                let k = rng.gen_range(1..=max_k);
                let mut vars: Vec<usize> = (0..ring.num_vars).collect();
                vars.shuffle(rng);
                vars.truncate(k);
                vars.sort_unstable();
                let m = rng.gen_range(0..=1);
                let s = if b.unit.is_none() && rng.gen_bool(0.5) { 0 } else { shift(rng) };
                b.koszul_block(&vars, m, s);
            }
            1 if room >= 2 => {
                let q = shift(rng);
                let e = b.add(q);
                let f = b.add(q + 1);
                b.entries.push((f, e, Polynomial::constant(ring, ring.field.random_nonzero(rng))));
            }
            2 if room >= 2 => {
                let k = rng.gen_range(1..=2u32);
                let q = shift(rng);
                let e = b.add(q);
                let f = b.add(q + 1 - w * k as i64);
                let mono = random_monomial_of_degree(ring.num_vars, k, rng);
                b.entries.push((f, e, Polynomial::term(ring, mono, ring.field.random_nonzero(rng))));
            }
            _ => {
                let q = shift(rng);
                b.add(q);
            }
        }
    }
    b.build(opts.conjugate, rng)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{homology_k, tensor_quotient};
    use crate::ring::FieldSpec;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn random_complexes_are_valid() {
        let mut with_units = 0;
        for seed in 0..40u64 {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let p = [0, 2, 3, 5][seed as usize % 4];
            let field = if p == 0 { FieldSpec::rationals() } else { FieldSpec::prime(p) };
            let ring = RingSpec::new(field, 1 + seed as usize % 3, 1 + seed as u32 % 2).unwrap();
            let rc = random_complex(ring, RandomComplexOptions::default(), &mut rng);
            rc.complex.ensure_valid().unwrap();
            with_units += usize::from(!rc.complex.constant_part().is_zero());
            if let Some(a) = &rc.augmentation {
                a.validate(&rc.complex).unwrap();
            }
        }
        assert!(with_units >= 10, "{with_units}");
    }

    #[test]
    fn unipotent_inverse_is_inverse() {
        let ring = RingSpec::new(FieldSpec::rationals(), 2, 1).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let p = random_unipotent(ring, &[0, 1, 1, 2, 3], &mut rng);
        assert_eq!(p.mul(&unipotent_inverse(&p)), PolyMatrix::identity(ring, 5));
    }

    #[test]
    fn conjugation_preserves_homology_mod_t() {
        for seed in 0..10u64 {
            let ring = RingSpec::new(FieldSpec::prime(3), 2, 1).unwrap();
            let opts = RandomComplexOptions { conjugate: false, ..Default::default() };
            let plain = random_complex(ring, opts, &mut ChaCha8Rng::seed_from_u64(seed));
            let twisted = random_complex(ring, RandomComplexOptions::default(), &mut ChaCha8Rng::seed_from_u64(seed));
            let dim = |c: &FreeComplex| homology_k(tensor_quotient(c, &[1, 1]).unwrap().complex()).total_dim();
            assert_eq!(plain.complex.len(), twisted.complex.len());
            assert_eq!(dim(&plain.complex), dim(&twisted.complex));
        }
    }
}
