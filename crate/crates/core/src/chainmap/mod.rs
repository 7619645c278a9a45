//! Chain maps and homotopies between free complexes, the standard map
//! `ι: K_r(m) → K_r(0)`, perturbation `f + dh + hd`, and rank certificates.

use rand::Rng;

use crate::complex::{koszul, FreeComplex, KoszulComplex};
use crate::error::{Error, Result};
use crate::ring::random::random_monomial;
use crate::ring::{rank_exact, rank_probabilistic, Element, PolyMatrix, Polynomial, RingSpec};

pub mod format;
mod induced;

pub use format::{parse_map, read_map_file, write_map, MapFile};
pub use induced::{induced_map_mod, InducedMap};

fn check_shape(source: &FreeComplex, target: &FreeComplex, matrix: &PolyMatrix) -> Result<()> {
    source.ring().ensure_same(&target.ring())?;
    source.ring().ensure_same(&matrix.ring())?;
    if matrix.rows() != target.len() || matrix.cols() != source.len() {
        return Err(Error::Shape(format!(
            "map matrix is {}x{}, expected {}x{}",
            matrix.rows(),
            matrix.cols(),
            target.len(),
            source.len()
        )));
    }
    Ok(())
}

/// Whether every entry `M[i][j]` is homogeneous of degree
/// `deg(source_j) + shift - deg(target_i)`.
fn has_degree(source: &FreeComplex, target: &FreeComplex, matrix: &PolyMatrix, shift: i64) -> bool {
    matrix.entries().all(|(i, j, p)| p.weighted_degree().compatible_with(source.degree(j) + shift - target.degree(i)))
}

/// An `R`-linear map with `f ∘ d = d ∘ f`. Column `j` is the image of source
/// generator `j`. Degrees need not be preserved.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainMap {
    source: FreeComplex,
    target: FreeComplex,
    matrix: PolyMatrix,
}

impl ChainMap {
    /// Checks shapes only; see [`is_chain_map`].
    pub fn new(source: FreeComplex, target: FreeComplex, matrix: PolyMatrix) -> Result<Self> {
        check_shape(&source, &target, &matrix)?;
        Ok(Self { source, target, matrix })
    }

    /// [`ChainMap::new`] followed by the chain-map check.
    pub fn validated(source: FreeComplex, target: FreeComplex, matrix: PolyMatrix) -> Result<Self> {
        let f = Self::new(source, target, matrix)?;
        is_chain_map(&f)?;
        Ok(f)
    }

    pub fn identity(c: &FreeComplex) -> Self {
        Self { source: c.clone(), target: c.clone(), matrix: PolyMatrix::identity(c.ring(), c.len()) }
    }

    pub fn source(&self) -> &FreeComplex {
        &self.source
    }

    pub fn target(&self) -> &FreeComplex {
        &self.target
    }

    pub fn matrix(&self) -> &PolyMatrix {
        &self.matrix
    }

    pub fn apply(&self, x: &[Polynomial]) -> Element {
        self.matrix.apply(x)
    }

    /// Whether the map preserves degrees.
    pub fn is_homogeneous(&self) -> bool {
        has_degree(&self.source, &self.target, &self.matrix, 0)
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &ChainMap) -> Result<ChainMap> {
        if first.target != self.source {
            return Err(Error::Shape("composition of maps with mismatched complexes".into()));
        }
        Ok(ChainMap {
            source: first.source.clone(),
            target: self.target.clone(),
            matrix: self.matrix.mul(&first.matrix),
        })
    }
}

/// An arbitrary `R`-linear map from `source` to `target`, read as a chain
/// homotopy. Column `j` is `h(e_j)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Homotopy {
    source: FreeComplex,
    target: FreeComplex,
    matrix: PolyMatrix,
}

impl Homotopy {
    pub fn new(source: FreeComplex, target: FreeComplex, matrix: PolyMatrix) -> Result<Self> {
        check_shape(&source, &target, &matrix)?;
        Ok(Self { source, target, matrix })
    }

    pub fn zero(source: &FreeComplex, target: &FreeComplex) -> Self {
        let matrix = PolyMatrix::zeros(source.ring(), target.len(), source.len());
        Self { source: source.clone(), target: target.clone(), matrix }
    }

    pub fn source(&self) -> &FreeComplex {
        &self.source
    }

    pub fn target(&self) -> &FreeComplex {
        &self.target
    }

    pub fn matrix(&self) -> &PolyMatrix {
        &self.matrix
    }

    /// Whether every entry lowers degree by exactly one.
    pub fn is_homogeneous(&self) -> bool {
        has_degree(&self.source, &self.target, &self.matrix, -1)
    }
}

/// `s_I^m ↦ (∏_{i∈I} t_i^m) s_I^0`.
pub fn standard_iota(ring: RingSpec, m: u32) -> ChainMap {
    let src = koszul(ring, m);
    let tgt = koszul(ring, 0);
    iota_between(&src, &tgt)
}

pub(crate) fn iota_between(src: &KoszulComplex, tgt: &KoszulComplex) -> ChainMap {
    let ring = src.ring();
    let m = src.m() - tgt.m();
    let mut matrix = PolyMatrix::zeros(ring, tgt.len(), src.len());
    for j in 0..src.len() {
        let mask = src.subset(j);
        let mut exps = vec![0; ring.num_vars];
        for (i, e) in exps.iter_mut().enumerate() {
            if mask >> i & 1 == 1 {
                *e = m;
            }
        }
        let mono = crate::ring::Monomial::new(&exps);
        matrix.set(tgt.index_of_subset(mask), j, Polynomial::term(ring, mono, ring.field.one()));
    }
    ChainMap { source: src.complex().clone(), target: tgt.complex().clone(), matrix }
}

/// `f + d h + h d`.
pub fn perturb(f: &ChainMap, h: &Homotopy) -> Result<ChainMap> {
    if h.source != f.source || h.target != f.target {
        return Err(Error::Shape("homotopy and map have different complexes".into()));
    }
    let dh = f.target.differential().mul(&h.matrix);
    let hd = h.matrix.mul(f.source.differential());
    let matrix = f.matrix.try_add(&dh)?.try_add(&hd)?;
    Ok(ChainMap { source: f.source.clone(), target: f.target.clone(), matrix })
}

/// `Ok` when `f ∘ d = d ∘ f`, otherwise the first failing column.
pub fn is_chain_map(f: &ChainMap) -> Result<()> {
    let left = f.matrix.mul(f.source.differential());
    let right = f.target.differential().mul(&f.matrix);
    for j in 0..f.source.len() {
        if left.column(j) != right.column(j) {
            return Err(Error::NotChainMap { column: j, generator: f.source.name(j).to_string() });
        }
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RankMode {
    Exact,
    /// Evaluation at a random point drawn from the given seed.
    Probabilistic(u64),
}

/// Rank of the map over `Frac(R)`.
pub fn rank_of_map(f: &ChainMap, mode: RankMode) -> usize {
    match mode {
        RankMode::Exact => rank_exact(&f.matrix),
        RankMode::Probabilistic(seed) => rank_probabilistic(&f.matrix, seed),
    }
}

/// Rank of `f` on the free submodule spanned by the given source generators.
pub fn restricted_rank(f: &ChainMap, generators: &[usize]) -> Result<usize> {
    if let Some(&g) = generators.iter().find(|&&g| g >= f.source.len()) {
        return Err(Error::Shape(format!("generator index {g} out of range")));
    }
    Ok(rank_exact(&f.matrix.select_columns(generators)))
}

/// Each column is zero with probability 1/2, otherwise a sum of up to two
/// monomial multiples (degree at most 4) of random target generators. With
/// `homogeneous` set, only terms of total degree `-1` are drawn.
pub fn random_homotopy<R: Rng + ?Sized>(
    source: &FreeComplex,
    target: &FreeComplex,
    homogeneous: bool,
    rng: &mut R,
) -> Homotopy {
    let ring = source.ring();
    let w = ring.weight as i64;
    let mut matrix = PolyMatrix::zeros(ring, target.len(), source.len());
    for j in 0..source.len() {
        if target.is_empty() || rng.gen_bool(0.5) {
            continue;
        }
        let allowed: Vec<(usize, Option<u32>)> = (0..target.len())
            .filter_map(|i| {
                if !homogeneous {
                    return Some((i, None));
                }
                let e = source.degree(j) - 1 - target.degree(i);
                (e >= 0 && e % w == 0 && e / w <= 4).then_some((i, Some((e / w) as u32)))
            })
            .collect();
        if allowed.is_empty() {
            continue;
        }
        for _ in 0..rng.gen_range(1..=2) {
            let (i, degree) = allowed[rng.gen_range(0..allowed.len())];
            let mono = match degree {
                Some(d) => crate::ring::random::random_monomial_of_degree(ring.num_vars, d, rng),
                None => random_monomial(ring.num_vars, 4, rng),
            };
            let term = Polynomial::term(ring, mono, ring.field.random_nonzero(rng));
            matrix.set(i, j, matrix.entry(i, j).add(&term));
        }
    }
    Homotopy { source: source.clone(), target: target.clone(), matrix }
}

/// The homotopy `h(s_1) = s_123^0`, `h(s_23) = t_3 s_12^0`, zero elsewhere,
/// on `K_3(1) → K_3(0)`. Perturbing `ι` by it gives a map of rank 6 over
/// `F_2` with `deg t_i = 1`; for `deg t_i = 2` it is not of degree `-1`.
pub fn rank_six_homotopy(ring: RingSpec) -> Result<Homotopy> {
    if ring.num_vars != 3 {
        return Err(Error::Precondition(format!("needs 3 variables, got {}", ring.num_vars)));
    }
    let src = koszul(ring, 1);
    let tgt = koszul(ring, 0);
    let mut matrix = PolyMatrix::zeros(ring, tgt.len(), src.len());
    matrix.set(tgt.index_of(&[1, 2, 3]), src.index_of(&[1]), Polynomial::one(ring));
    matrix.set(tgt.index_of(&[1, 2]), src.index_of(&[2, 3]), Polynomial::var(ring, 2));
    Homotopy::new(src.into_complex(), tgt.into_complex(), matrix)
}
