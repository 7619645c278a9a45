//! The map a chain map induces on `H(C ⊗_R R/(t^a))`.

use super::ChainMap;
use crate::complex::{homology_k, tensor_quotient, Homology, QuotientComplex};
use crate::error::Result;
use crate::ring::{zero_element, Mat, Polynomial, Scalar, SparseVec};

/// `f_*: H(S ⊗ R̄) → H(T ⊗ R̄)` in the representative bases of the two
/// homologies, degrees ascending. Column `j` is the image of class `j`.
#[derive(Clone, Debug)]
pub struct InducedMap {
    pub source_quotient: QuotientComplex,
    pub target_quotient: QuotientComplex,
    pub source_homology: Homology,
    pub target_homology: Homology,
    pub matrix: Mat,
}

impl InducedMap {
    /// Class coordinates of an element of the target quotient, which must be
    /// a cycle.
    pub fn target_class(&self, cycle: &SparseVec) -> Vec<Scalar> {
        self.target_homology.project(cycle)
    }

    pub fn source_class(&self, cycle: &SparseVec) -> Vec<Scalar> {
        self.source_homology.project(cycle)
    }

    /// `f_*` applied to class coordinates.
    pub fn apply(&self, class: &[Scalar]) -> Vec<Scalar> {
        self.matrix.mul_vec(class)
    }
}

pub fn induced_map_mod(f: &ChainMap, a: &[u32]) -> Result<InducedMap> {
    let sq = tensor_quotient(f.source(), a)?;
    let tq = tensor_quotient(f.target(), a)?;
    let sh = homology_k(sq.complex());
    let th = homology_k(tq.complex());
    let ring = f.source().ring();
    let field = ring.field;
    let mut columns = Vec::with_capacity(sh.total_dim());
    for dh in sh.degrees() {
        for rep in dh.representatives() {
            let mut x = zero_element(ring, f.source().len());
            for (k, c) in rep {
                let (g, m) = sq.cells()[*k];
                x[g] = x[g].add(&Polynomial::term(ring, m, c.clone()));
            }
            columns.push(th.project(&tq.reduce_element(&f.apply(&x))));
        }
    }
    let matrix = Mat::from_columns(field, th.total_dim(), &columns);
    Ok(InducedMap { source_quotient: sq, target_quotient: tq, source_homology: sh, target_homology: th, matrix })
}
