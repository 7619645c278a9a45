//! Lifting maps between `K_r(m)`, a free complex `C` and `K_r(0)`.
//!
//! Every lift is solved one graded piece at a time: the unknown image of a
//! generator of degree `q` lives in the finite-dimensional piece `C^q`, and
//! the chain-map condition is a linear system `d x = y` into `C^{q+1}`.
//! Solutions are supported on the pivot columns of the piece basis, so the
//! lifts are deterministic.

use crate::chainmap::{is_chain_map, ChainMap};
use crate::complex::{koszul, Augmentation, FreeComplex, Generator, GradedPiece, KoszulComplex};
use crate::error::{Error, Result};
use crate::filtration::{check_properties, Filtration};
use crate::ring::{ColumnSolver, EchelonBasis, Element, Mat, PolyMatrix, Polynomial, Scalar, SparseVec};

mod multiplicative;
mod pipeline;

pub use multiplicative::{multiplicative_alpha, MultiplicativeLift};
pub use pipeline::{case0_improved_bound, verify_cor43, Case0Report, FactorizationReport};

/// Solves `d x = y` (and optionally `ε(x) = e`) for `x` in one graded piece.
struct PieceSolver {
    source: GradedPiece,
    target: GradedPiece,
    solver: ColumnSolver,
}

impl PieceSolver {
    fn new<F: Fn(usize) -> bool>(c: &FreeComplex, degree: i64, include: F, aug: Option<&Augmentation>) -> Self {
        let source = GradedPiece::new(c, degree, include);
        let target = GradedPiece::new(c, degree + 1, |_| true);
        let mut columns = source.differential_columns(c, &target).expect("the differential has degree one");
        if let Some(a) = aug {
            let row = target.len();
            for (col, &(g, m)) in columns.iter_mut().zip(source.cells()) {
                let e = &a.values()[g];
                if m.degree() == 0 && !e.is_zero() {
                    col.insert(row, e.clone());
                }
            }
        }
        let solver = ColumnSolver::new(c.ring().field, columns);
        Self { source, target, solver }
    }

    fn solve(&self, c: &FreeComplex, y: &[Polynomial], augmented: Option<Scalar>) -> Option<Element> {
        let mut b: SparseVec = self.target.coordinates(y)?;
        if let Some(e) = augmented.filter(|e| !e.is_zero()) {
            b.insert(self.target.len(), e);
        }
        let x = self.solver.solve(&b)?;
        Some(self.source.element(c.ring(), c.len(), &x))
    }
}

fn columns_to_matrix(c: &FreeComplex, columns: &[Element]) -> PolyMatrix {
    PolyMatrix::from_columns(c.ring(), c.len(), columns)
}

/// A chain map `α: K_r(m) → C` with `ε(α(1)) = 1`, built over exterior
/// length: `α(1)` is a degree-0 cycle with augmentation one, and `α(s_I)`
/// solves `d α(s_I) = α(d s_I)`.
pub fn lift_alpha(c: &FreeComplex, aug: &Augmentation, m: u32) -> Result<ChainMap> {
    c.ensure_valid()?;
    aug.validate(c)?;
    let k = koszul(c.ring(), m);
    let images = alpha_images(c, aug, &k)?;
    let map = ChainMap::new(k.complex().clone(), c.clone(), columns_to_matrix(c, &images))?;
    is_chain_map(&map)?;
    Ok(map)
}

/// Images of the Koszul generators in their order, which lists shorter
/// subsets first.
fn alpha_images(c: &FreeComplex, aug: &Augmentation, k: &KoszulComplex) -> Result<Vec<Element>> {
    let field = c.ring().field;
    let unit = PieceSolver::new(c, 0, |_| true, Some(aug));
    let zero: Element = c.zero_element();
    let one = unit.solve(c, &zero, Some(field.one())).ok_or(Error::NoAugmentedCycle)?;
    let mut images = vec![one];
    let mut solver: Option<(i64, PieceSolver)> = None;
    for j in 1..k.len() {
        let q = k.complex().degree(j);
        if solver.as_ref().map(|s| s.0) != Some(q) {
            solver = Some((q, PieceSolver::new(c, q, |_| true, None)));
        }
        let mut y = c.zero_element();
        for (i, p) in k.complex().differential().column(j) {
            for (slot, v) in y.iter_mut().zip(&images[*i]) {
                if !v.is_zero() {
                    *slot = slot.add(&p.mul(v));
                }
            }
        }
        let (_, s) = solver.as_ref().expect("set above");
        let x = s.solve(c, &y, None).ok_or_else(|| Error::Obstruction {
            degree: q + 1,
            generator: k.complex().name(j).to_string(),
            detail: "the image of its boundary is a cycle that is not a boundary".into(),
        })?;
        images.push(x);
    }
    Ok(images)
}

/// A homogeneous basis of `k^n` adapted to the filtration, with the level
/// `i` at which each vector first appears.
fn adapted_basis(f: &Filtration) -> Vec<(usize, i64, Vec<Scalar>)> {
    let mut span = EchelonBasis::new(f.field(), f.num_generators());
    let mut out = Vec::new();
    for i in 1..f.num_levels() {
        for (q, v) in f.homogeneous_basis(i) {
            if span.insert(&v) {
                out.push((i, q, v));
            }
        }
    }
    out
}

fn constant_matrix(c: &FreeComplex, m: &Mat) -> PolyMatrix {
    let ring = c.ring();
    let mut p = PolyMatrix::zeros(ring, m.rows(), m.cols());
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            if !m.get(i, j).is_zero() {
                p.set(i, j, Polynomial::constant(ring, m.get(i, j).clone()));
            }
        }
    }
    p
}

/// A chain map `β: C → K_r(0)` with `ε_K ∘ β = ε`, sending `F_i` into
/// exterior length at most `i - 1`. Built on a filtration-adapted basis,
/// one level at a time.
pub fn lift_beta(model: &FreeComplex, f: &Filtration, aug: &Augmentation) -> Result<ChainMap> {
    aug.validate(model)?;
    if f.num_generators() != model.len() {
        return Err(Error::Shape(format!(
            "filtration on {} generators, model has {}",
            f.num_generators(),
            model.len()
        )));
    }
    let report = check_properties(f, model, Some(aug));
    if !report.boundary_lowers_level || !report.ascending {
        return Err(Error::Precondition(format!("filtration is not admissible: {}", report.failures.join("; "))));
    }
    if report.augmentation_on_first_level != Some(true) {
        return Err(Error::Precondition("the augmentation is not surjective on F_1".into()));
    }
    let ring = model.ring();
    let n = model.len();
    let basis = adapted_basis(f);
    let columns: Vec<Vec<Scalar>> = basis.iter().map(|(_, _, v)| v.clone()).collect();
    let t = Mat::from_columns(ring.field, n, &columns);
    let t_inv = t.inverse().expect("adapted basis spans");
    let (tp, tp_inv) = (constant_matrix(model, &t), constant_matrix(model, &t_inv));
    let gens = basis.iter().enumerate().map(|(k, (_, q, _))| Generator::new(format!("b{}", k + 1), *q)).collect();
    let adapted = FreeComplex::new(ring, gens, tp_inv.mul(model.differential()).mul(&tp))?;
    let eps = aug.pull_back(&tp);
    let kz = koszul(ring, 0);
    let kc = kz.complex();
    let mut images: Vec<Element> = Vec::with_capacity(n);
    for (k, (level, q, _)) in basis.iter().enumerate() {
        let mut y = kc.zero_element();
        for (c, p) in adapted.differential().column(k) {
            if basis[*c].0 >= *level {
                return Err(Error::Precondition(format!(
                    "the boundary does not lower the filtration at level {level}"
                )));
            }
            for (slot, v) in y.iter_mut().zip(&images[*c]) {
                if !v.is_zero() {
                    *slot = slot.add(&p.mul(v));
                }
            }
        }
        let solver = PieceSolver::new(kc, *q, |g| (kz.exterior_length(g) as usize) < *level, Some(&kz.augmentation()));
        let x = solver.solve(kc, &y, Some(eps.values()[k].clone())).ok_or_else(|| Error::Obstruction {
            degree: q + 1,
            generator: format!("basis vector {} of F_{level}", k + 1),
            detail: "no preimage in the allowed exterior length".into(),
        })?;
        images.push(x);
    }
    let beta = PolyMatrix::from_columns(ring, kc.len(), &images).mul(&tp_inv);
    let map = ChainMap::new(model.clone(), kc.clone(), beta)?;
    is_chain_map(&map)?;
    Ok(map)
}

/// Whether `β(F_i)` lies in exterior length at most `i - 1` for every level.
pub fn preserves_filtration(beta: &ChainMap, f: &Filtration) -> bool {
    let kz = koszul(beta.target().ring(), 0);
    let ring = beta.source().ring();
    (1..f.num_levels()).all(|i| {
        f.homogeneous_basis(i).iter().all(|(_, v)| {
            let x: Element = v.iter().map(|c| Polynomial::constant(ring, c.clone())).collect();
            beta.apply(&x).iter().enumerate().all(|(g, p)| p.is_zero() || (kz.exterior_length(g) as usize) < i)
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chainmap::{induced_map_mod, rank_of_map, standard_iota, RankMode};
    use crate::filtration::compute_filtration;
    use crate::ring::{FieldSpec, RingSpec};

    fn ring(p: u64, r: usize, w: u32) -> RingSpec {
        let field = if p == 0 { FieldSpec::rationals() } else { FieldSpec::prime(p) };
        RingSpec::new(field, r, w).unwrap()
    }

    #[test]
    fn alpha_into_koszul_recovers_iota() {
        let ring = ring(0, 2, 1);
        let k0 = koszul(ring, 0);
        let alpha = lift_alpha(k0.complex(), &k0.augmentation(), 1).unwrap();
        is_chain_map(&alpha).unwrap();
        assert_eq!(alpha.matrix(), standard_iota(ring, 1).matrix());
    }

    #[test]
    fn alpha_is_homotopic_to_iota() {
        for (p, r, m) in [(2, 3, 1), (3, 2, 2), (0, 3, 2)] {
            let ring = ring(p, r, 1);
            let k0 = koszul(ring, 0);
            let alpha = lift_alpha(k0.complex(), &k0.augmentation(), m).unwrap();
            assert!(alpha.is_homogeneous());
            let a = vec![m + 1; r];
            let iota = standard_iota(ring, m);
            assert_eq!(induced_map_mod(&alpha, &a).unwrap().matrix, induced_map_mod(&iota, &a).unwrap().matrix);
        }
    }

    #[test]
    fn alpha_needs_an_augmented_cycle() {
        let ring = ring(0, 1, 1);
        let mut d = PolyMatrix::zeros(ring, 2, 2);
        d.set(1, 0, Polynomial::one(ring));
        let c = FreeComplex::new(ring, vec![Generator::new("e1", 0), Generator::new("e2", 1)], d).unwrap();
        let aug = Augmentation::new(ring.field, vec![ring.field.zero(); 2]);
        assert!(matches!(lift_alpha(&c, &aug, 1), Err(Error::NoAugmentedCycle)));
    }

    #[test]
    fn alpha_obstructed_when_homology_is_too_high() {
        let ring = ring(2, 2, 1);
        let k1 = koszul(ring, 1);
        assert!(matches!(lift_alpha(k1.complex(), &k1.augmentation(), 0), Err(Error::Obstruction { .. })));
        lift_alpha(k1.complex(), &k1.augmentation(), 1).unwrap();
    }

    #[test]
    fn beta_on_koszul_is_identity() {
        let ring = ring(3, 3, 1);
        let k0 = koszul(ring, 0);
        let f = compute_filtration(k0.complex()).unwrap();
        let beta = lift_beta(k0.complex(), &f, &k0.augmentation()).unwrap();
        assert!(preserves_filtration(&beta, &f));
        assert_eq!(rank_of_map(&beta, RankMode::Exact), 8);
    }

    #[test]
    fn beta_on_a_point() {
        let ring = ring(0, 2, 1);
        let c = FreeComplex::new(ring, vec![Generator::new("x", 0)], PolyMatrix::zeros(ring, 1, 1)).unwrap();
        let aug = Augmentation::new(ring.field, vec![ring.field.one()]);
        let f = compute_filtration(&c).unwrap();
        let beta = lift_beta(&c, &f, &aug).unwrap();
        assert_eq!(beta.matrix().entry(0, 0), Polynomial::one(ring));
        assert_eq!(rank_of_map(&beta, RankMode::Exact), 1);
    }

    #[test]
    fn beta_rejects_augmentation_vanishing_on_first_level() {
        let ring = ring(0, 1, 1);
        let c = FreeComplex::new(ring, vec![Generator::new("x", 0)], PolyMatrix::zeros(ring, 1, 1)).unwrap();
        let aug = Augmentation::new(ring.field, vec![ring.field.zero()]);
        let f = compute_filtration(&c).unwrap();
        assert!(matches!(lift_beta(&c, &f, &aug), Err(Error::Precondition(_))));
    }

    #[test]
    fn composite_through_higher_koszul() {
        for r in 2..=3 {
            let ring = ring(2, r, 1);
            let k1 = koszul(ring, 1);
            let f = compute_filtration(k1.complex()).unwrap();
            let alpha = lift_alpha(k1.complex(), &k1.augmentation(), 1).unwrap();
            let beta = lift_beta(k1.complex(), &f, &k1.augmentation()).unwrap();
            assert!(preserves_filtration(&beta, &f));
            let gamma = beta.compose(&alpha).unwrap();
            is_chain_map(&gamma).unwrap();
            assert!(rank_of_map(&gamma, RankMode::Exact) >= 2 * r);
        }
    }
}
