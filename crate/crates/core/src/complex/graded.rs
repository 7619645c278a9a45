//! Finite-dimensional graded pieces `C^D = ⊕_g R_{D - deg g} · g` of a free
//! complex, used to turn lifting problems into linear systems over `k`.

use std::collections::HashMap;

use super::FreeComplex;
use crate::ring::{zero_element, Element, Monomial, Polynomial, RingSpec, SparseVec};

/// Monomials of weighted degree `e` (empty when `e < 0` or not divisible by
/// the weight).
pub fn monomials_of_weighted_degree(ring: RingSpec, e: i64) -> Vec<Monomial> {
    let w = ring.weight as i64;
    if e < 0 || e % w != 0 {
        return Vec::new();
    }
    Monomial::all_of_degree(ring.num_vars, (e / w) as u32)
}

/// Basis `(generator, monomial)` of a graded piece, generator-major with
/// monomials in descending graded-lexicographic order.
#[derive(Clone, Debug)]
pub struct GradedPiece {
    degree: i64,
    cells: Vec<(usize, Monomial)>,
    index: HashMap<(usize, Monomial), usize>,
}

impl GradedPiece {
    /// The piece of degree `degree`, restricted to generators accepted by
    /// `include`.
    pub fn new<F: Fn(usize) -> bool>(c: &FreeComplex, degree: i64, include: F) -> Self {
        let mut cells = Vec::new();
        for g in 0..c.len() {
            if !include(g) {
                continue;
            }
            for m in monomials_of_weighted_degree(c.ring(), degree - c.degree(g)) {
                cells.push((g, m));
            }
        }
        let index = cells.iter().enumerate().map(|(k, c)| (*c, k)).collect();
        Self { degree, cells, index }
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn cells(&self) -> &[(usize, Monomial)] {
        &self.cells
    }

    pub fn index_of(&self, generator: usize, m: &Monomial) -> Option<usize> {
        self.index.get(&(generator, *m)).copied()
    }

    /// Coordinates of `x`, or `None` if some term lies outside the piece.
    pub fn coordinates(&self, x: &[Polynomial]) -> Option<SparseVec> {
        let mut v = SparseVec::new();
        for (g, p) in x.iter().enumerate() {
            for (m, c) in p.terms() {
                v.insert(self.index_of(g, m)?, c.clone());
            }
        }
        Some(v)
    }

    pub fn element(&self, ring: RingSpec, len: usize, v: &SparseVec) -> Element {
        let mut x = zero_element(ring, len);
        for (&k, c) in v {
            let (g, m) = self.cells[k];
            x[g] = x[g].add(&Polynomial::term(ring, m, c.clone()));
        }
        x
    }

    /// Columns of `d` restricted to this piece, in coordinates of `target`;
    /// `None` if some image leaves `target`.
    pub fn differential_columns(&self, c: &FreeComplex, target: &GradedPiece) -> Option<Vec<SparseVec>> {
        let d = c.differential();
        self.cells
            .iter()
            .map(|(g, m)| {
                let mut v = SparseVec::new();
                for (i, p) in d.column(*g) {
                    for (tm, tc) in p.terms() {
                        v.insert(target.index_of(*i, &tm.mul(m))?, tc.clone());
                    }
                }
                Some(v)
            })
            .collect()
    }
}
