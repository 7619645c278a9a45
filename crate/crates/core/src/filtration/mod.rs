//! The filtration of a minimal complex by iterated preimages of zero:
//! `F_0 = 0` and `F_{i+1} = { x : d̄(x) ∈ F_i ⊗ R }`, computed degree by
//! degree on the `k`-space spanned by the generators.

use std::collections::BTreeMap;
use std::fmt;

use crate::complex::{Augmentation, FreeComplex};
use crate::error::{Error, Result};
use crate::minimal::{lambda_length, LambdaAction};
use crate::ring::{EchelonBasis, FieldSpec, Mat, Monomial, Scalar};

/// `d̄ = Σ_μ μ · D_μ` split by monomial.
#[derive(Clone, Debug)]
struct Coefficients {
    parts: Vec<(Monomial, Mat)>,
}

impl Coefficients {
    fn of(model: &FreeComplex) -> Self {
        let n = model.len();
        let field = model.ring().field;
        let mut parts: BTreeMap<Monomial, Mat> = BTreeMap::new();
        for (y, x, p) in model.differential().entries() {
            for (m, c) in p.terms() {
                parts.entry(*m).or_insert_with(|| Mat::zeros(field, n, n)).set(y, x, c.clone());
            }
        }
        Self { parts: parts.into_iter().collect() }
    }
}

/// A graded subspace of the generator space, stored per degree in local
/// coordinates of that degree's generators.
type Graded = BTreeMap<i64, EchelonBasis>;

#[derive(Clone, Debug)]
pub struct Filtration {
    field: FieldSpec,
    /// Generator indices of each degree.
    blocks: BTreeMap<i64, Vec<usize>>,
    /// Position of each generator inside its degree block.
    local: Vec<usize>,
    degrees: Vec<i64>,
    coefficients: Coefficients,
    levels: Vec<Graded>,
}

fn empty_level(field: FieldSpec, blocks: &BTreeMap<i64, Vec<usize>>) -> Graded {
    blocks.iter().map(|(&q, idx)| (q, EchelonBasis::new(field, idx.len()))).collect()
}

pub fn compute_filtration(model: &FreeComplex) -> Result<Filtration> {
    if let Some((row, col, _)) = model.differential().entries().find(|(_, _, p)| !p.constant_term().is_zero()) {
        return Err(Error::NotMinimal { row, col });
    }
    if model.is_empty() {
        return Err(Error::ZeroModel);
    }
    let field = model.ring().field;
    let n = model.len();
    let degrees: Vec<i64> = (0..n).map(|i| model.degree(i)).collect();
    let mut blocks: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
    let mut local = vec![0; n];
    for (i, &q) in degrees.iter().enumerate() {
        let b = blocks.entry(q).or_default();
        local[i] = b.len();
        b.push(i);
    }
    let mut f = Filtration {
        field,
        blocks: blocks.clone(),
        local,
        degrees,
        coefficients: Coefficients::of(model),
        levels: vec![empty_level(field, &blocks)],
    };
    for _ in 0..=n {
        let next = f.preimage(f.levels.last().expect("F_0 exists"));
        let done = next == *f.levels.last().expect("F_0 exists");
        f.levels.push(next);
        if done {
            break;
        }
    }
    Ok(f)
}

impl Filtration {
    /// `{ x : D_μ x ∈ prev for all μ }`, degree by degree.
    fn preimage(&self, prev: &Graded) -> Graded {
        let mut out = Graded::new();
        for (&q, idx) in &self.blocks {
            let mut constraints: Vec<Vec<Scalar>> = Vec::new();
            for (_, dm) in &self.coefficients.parts {
                // D_μ restricted to columns of degree q, grouped by target degree
                let mut by_target: BTreeMap<i64, Vec<(usize, usize, Scalar)>> = BTreeMap::new();
                for (x, &kx) in idx.iter().enumerate() {
                    for y in 0..dm.rows() {
                        let c = dm.get(y, kx);
                        if !c.is_zero() {
                            by_target.entry(self.degrees[y]).or_default().push((self.local[y], x, c.clone()));
                        }
                    }
                }
                for (qt, entries) in by_target {
                    let rows = self.blocks[&qt].len();
                    let mut block = Mat::zeros(self.field, rows, idx.len());
                    for (y, x, c) in entries {
                        block.set(y, x, c);
                    }
                    for a in prev[&qt].annihilator() {
                        let row: Vec<Scalar> = (0..idx.len())
                            .map(|x| {
                                let mut acc = self.field.zero();
                                for (y, ay) in a.iter().enumerate() {
                                    if !ay.is_zero() {
                                        acc = &acc + &(ay * block.get(y, x));
                                    }
                                }
                                acc
                            })
                            .collect();
                        if row.iter().any(|v| !v.is_zero()) {
                            constraints.push(row);
                        }
                    }
                }
            }
            let kernel = Mat::from_rows(self.field, idx.len(), &constraints).nullspace();
            out.insert(q, EchelonBasis::from_vectors(self.field, idx.len(), &kernel));
        }
        out
    }

    /// The smallest `i` with `F_i = F_{i+1}`.
    pub fn length(&self) -> usize {
        self.levels.len() - 2
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn num_generators(&self) -> usize {
        self.degrees.len()
    }

    /// Number of stored levels `F_0, ..., F_{length + 1}`.
    pub fn num_levels(&self) -> usize {
        self.levels.len()
    }

    pub fn dim(&self, i: usize) -> usize {
        self.levels[i].values().map(EchelonBasis::dim).sum()
    }

    pub fn dims(&self) -> Vec<usize> {
        (0..self.levels.len()).map(|i| self.dim(i)).collect()
    }

    fn embed(&self, q: i64, v: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![self.field.zero(); self.degrees.len()];
        for (k, &g) in self.blocks[&q].iter().enumerate() {
            out[g] = v[k].clone();
        }
        out
    }

    /// A basis of `F_i` made of homogeneous vectors, with their degrees.
    pub fn homogeneous_basis(&self, i: usize) -> Vec<(i64, Vec<Scalar>)> {
        self.levels[i].iter().flat_map(|(&q, b)| b.basis().map(move |v| (q, self.embed(q, v)))).collect()
    }

    /// `F_i` as a subspace of `k^n`.
    pub fn subspace(&self, i: usize) -> EchelonBasis {
        let n = self.degrees.len();
        let vs: Vec<Vec<Scalar>> = self.homogeneous_basis(i).into_iter().map(|(_, v)| v).collect();
        EchelonBasis::from_vectors(self.field, n, &vs)
    }

    /// Whether the vector `v` of generator coefficients lies in `F_i`.
    pub fn contains(&self, i: usize, v: &[Scalar]) -> bool {
        self.subspace(i).contains(v)
    }

    /// The least `i` with `v ∈ F_i`.
    pub fn level_of(&self, v: &[Scalar]) -> Option<usize> {
        (0..self.levels.len()).find(|&i| self.contains(i, v))
    }

    /// Replaces `F_i` by the span of the given homogeneous vectors (used to
    /// exercise the property checks on broken chains).
    pub fn with_level(&self, i: usize, vectors: &[(i64, Vec<Scalar>)]) -> Filtration {
        let mut f = self.clone();
        let mut level = empty_level(self.field, &self.blocks);
        for (q, v) in vectors {
            let local: Vec<Scalar> = self.blocks[q].iter().map(|&g| v[g].clone()).collect();
            level.get_mut(q).expect("known degree").insert(&local);
        }
        f.levels[i] = level;
        f
    }

    fn coefficient_images(&self, v: &[Scalar]) -> impl Iterator<Item = Vec<Scalar>> + '_ {
        let v = v.to_vec();
        self.coefficients.parts.iter().map(move |(_, m)| m.mul_vec(&v))
    }
}

/// Outcome of the structural checks on a filtration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PropertyReport {
    /// Strict ascent ending at the whole space.
    pub ascending: bool,
    /// `d̄ F_i ⊆ F_{i-1} ⊗ R`.
    pub boundary_lowers_level: bool,
    /// The augmentation is a cocycle and nonzero on `F_1`; `None` without one.
    pub augmentation_on_first_level: Option<bool>,
    /// For `2 ≤ i ≤ length`, `d̄` induces a nonzero map
    /// `F_i / F_{i-1} → (F_{i-1} / F_{i-2}) ⊗ R`.
    pub graded_boundary_nonzero: bool,
    pub failures: Vec<String>,
}

impl PropertyReport {
    pub fn all_pass(&self) -> bool {
        self.failures.is_empty()
    }
}

pub fn check_properties(f: &Filtration, model: &FreeComplex, augmentation: Option<&Augmentation>) -> PropertyReport {
    let mut failures = Vec::new();
    let len = f.length();
    let n = f.num_generators();
    let dims = f.dims();
    let mut ascending = dims[len] == n;
    if !ascending {
        failures.push(format!("F_{len} has dimension {} but the model has {n} generators", dims[len]));
    }
    for i in 1..=len {
        if dims[i] <= dims[i - 1] || !f.subspace(i).contains_subspace(&f.subspace(i - 1)) {
            ascending = false;
            failures.push(format!("F_{} is not properly contained in F_{i}", i - 1));
        }
    }
    let mut lowers = true;
    for i in 1..f.num_levels() {
        let below = f.subspace(i - 1);
        for (_, x) in f.homogeneous_basis(i) {
            if f.coefficient_images(&x).any(|y| !below.contains(&y)) {
                lowers = false;
                failures.push(format!("the boundary does not map F_{i} into F_{}", i - 1));
                break;
            }
        }
    }
    let augmentation_on_first_level = augmentation.map(|a| {
        let cocycle = a.validate(model).is_ok();
        let hits = f.homogeneous_basis(1).iter().any(|(_, x)| {
            let acc = x.iter().zip(a.values()).fold(f.field().zero(), |acc, (c, e)| &acc + &(c * e));
            !acc.is_zero()
        });
        if !cocycle {
            failures.push("the augmentation is not compatible with the boundary".into());
        }
        if !hits {
            failures.push("the augmentation vanishes on F_1".into());
        }
        cocycle && hits
    });
    let mut nonzero = true;
    for i in 2..=len {
        let target = f.subspace(i - 2);
        let found = f.homogeneous_basis(i).iter().any(|(_, x)| f.coefficient_images(x).any(|y| !target.contains(&y)));
        if !found {
            nonzero = false;
            failures.push(format!("the boundary induces zero from F_{i}/F_{} to F_{}/F_{}", i - 1, i - 1, i - 2));
        }
    }
    PropertyReport {
        ascending,
        boundary_lowers_level: lowers,
        augmentation_on_first_level,
        graded_boundary_nonzero: nonzero,
        failures,
    }
}

/// The numerical consequences of the filtration and the `λ` action.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundReport {
    pub dim_h: usize,
    pub length: usize,
    pub lambda_lengths: BTreeMap<i64, usize>,
    pub sum_lambda_lengths: usize,
    pub nonzero_degrees: usize,
    pub trivial_action: bool,
    /// `dim H ≥ 2 (length - 1)`.
    pub twice_length: bool,
    /// `dim H ≥ Σ_q ℓ_Λ(H^q)`.
    pub dim_vs_lambda: bool,
    /// `Σ_q ℓ_Λ(H^q) ≥ length`.
    pub lambda_vs_length: bool,
    /// `#{q : H^q ≠ 0} ≥ length`, only for a trivial action.
    pub degrees_vs_length: Option<bool>,
}

impl BoundReport {
    pub fn all_pass(&self) -> bool {
        self.twice_length && self.dim_vs_lambda && self.lambda_vs_length && self.degrees_vs_length != Some(false)
    }
}

pub fn bound_checks(model: &FreeComplex, f: &Filtration, action: &LambdaAction) -> BoundReport {
    let dim_h = model.len();
    let length = f.length();
    let lambda_lengths: BTreeMap<i64, usize> =
        action.degrees().into_iter().map(|q| (q, lambda_length(action, q))).collect();
    let sum: usize = lambda_lengths.values().sum();
    let nonzero_degrees = lambda_lengths.len();
    let trivial = action.is_trivial();
    BoundReport {
        dim_h,
        length,
        sum_lambda_lengths: sum,
        lambda_lengths,
        nonzero_degrees,
        trivial_action: trivial,
        twice_length: dim_h + 2 >= 2 * length,
        dim_vs_lambda: dim_h >= sum,
        lambda_vs_length: sum >= length,
        degrees_vs_length: trivial.then_some(nonzero_degrees >= length),
    }
}

impl fmt::Display for BoundReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v = |b: bool| if b { "PASS" } else { "FAIL" };
        writeln!(f, "dim_h = {}", self.dim_h)?;
        writeln!(f, "filtration_length = {}", self.length)?;
        writeln!(f, "sum_lambda_lengths = {}", self.sum_lambda_lengths)?;
        writeln!(f, "nonzero_degrees = {}", self.nonzero_degrees)?;
        writeln!(f, "trivial_lambda_action = {}", self.trivial_action)?;
        writeln!(f, "dim_h >= 2*(length-1): {}", v(self.twice_length))?;
        writeln!(f, "dim_h >= sum_lambda_lengths: {}", v(self.dim_vs_lambda))?;
        writeln!(f, "sum_lambda_lengths >= length: {}", v(self.lambda_vs_length))?;
        match self.degrees_vs_length {
            Some(b) => writeln!(f, "nonzero_degrees >= length: {}", v(b)),
            None => writeln!(f, "nonzero_degrees >= length: SKIPPED (nontrivial lambda action)"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{koszul, Generator};
    use crate::minimal::lambda_ops;
    use crate::ring::{PolyMatrix, RingSpec};

    fn k(p: u64, r: usize, w: u32, m: u32) -> crate::complex::KoszulComplex {
        let field = if p == 0 { FieldSpec::rationals() } else { FieldSpec::prime(p) };
        koszul(RingSpec::new(field, r, w).unwrap(), m)
    }

    #[test]
    fn koszul_three_levels() {
        let kc = k(2, 3, 1, 0);
        let f = compute_filtration(kc.complex()).unwrap();
        assert_eq!(f.length(), 4);
        assert_eq!(f.dims(), vec![0, 1, 4, 7, 8, 8]);
        // F_i is spanned by the s_I with |I| < i
        for i in 1..=4 {
            for g in 0..8 {
                let mut v = vec![f.field().zero(); 8];
                v[g] = f.field().one();
                assert_eq!(f.contains(i, &v), (kc.exterior_length(g) as usize) < i);
            }
        }
        let report = check_properties(&f, kc.complex(), Some(&kc.augmentation()));
        assert!(report.all_pass(), "{:?}", report.failures);
        let b = bound_checks(kc.complex(), &f, &lambda_ops(kc.complex()).unwrap());
        assert_eq!((b.dim_h, b.length, b.sum_lambda_lengths), (8, 4, 4));
        assert!(b.all_pass());
    }

    #[test]
    fn koszul_lengths() {
        for r in 1..=5 {
            let kc = k(0, r, 1, 0);
            assert_eq!(compute_filtration(kc.complex()).unwrap().length(), r + 1);
        }
    }

    #[test]
    fn zero_differential() {
        let ring = RingSpec::new(FieldSpec::rationals(), 2, 1).unwrap();
        let gens = vec![Generator::new("a", 0), Generator::new("b", 3)];
        let c = FreeComplex::new(ring, gens, PolyMatrix::zeros(ring, 2, 2)).unwrap();
        let f = compute_filtration(&c).unwrap();
        assert_eq!(f.length(), 1);
        assert_eq!(f.dim(1), 2);
        assert!(check_properties(&f, &c, None).all_pass());
        let b = bound_checks(&c, &f, &lambda_ops(&c).unwrap());
        assert_eq!(b.degrees_vs_length, Some(true));
    }

    #[test]
    fn higher_koszul_bounds() {
        let kc = k(2, 3, 1, 1);
        let f = compute_filtration(kc.complex()).unwrap();
        let b = bound_checks(kc.complex(), &f, &lambda_ops(kc.complex()).unwrap());
        assert_eq!(b.nonzero_degrees, 4);
        assert!(b.trivial_action);
        assert!(b.all_pass());
        assert_eq!(f.length(), 4);
    }

    #[test]
    fn dropping_a_vector_is_caught() {
        let kc = k(3, 2, 1, 0);
        let f = compute_filtration(kc.complex()).unwrap();
        let mut basis = f.homogeneous_basis(f.length());
        basis.pop();
        let broken = f.with_level(f.length(), &basis);
        assert!(!check_properties(&broken, kc.complex(), None).ascending);
    }

    #[test]
    fn rejects_non_minimal_and_zero() {
        let ring = RingSpec::new(FieldSpec::rationals(), 1, 1).unwrap();
        assert!(matches!(compute_filtration(&FreeComplex::zero(ring)), Err(Error::ZeroModel)));
    }
}
