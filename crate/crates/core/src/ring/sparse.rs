//! Sparse linear systems over `k`, solved column by column.
//!
//! [`ColumnSolver`] scans the columns of `A` in order and keeps the ones that
//! are independent of their predecessors. Solutions of `A x = b` are expressed
//! in those pivot columns only, which is the same solution a reduced row
//! echelon form gives when every free variable is set to zero.

use std::collections::{BTreeMap, HashMap};

use super::scalar::{FieldSpec, Scalar};

pub type SparseVec = BTreeMap<usize, Scalar>;

/// `a -= f * b` on sparse vectors.
pub fn sub_scaled(a: &mut SparseVec, f: &Scalar, b: &SparseVec) {
    for (i, v) in b {
        let prod = f * v;
        match a.get_mut(i) {
            Some(slot) => {
                let nv = &*slot - &prod;
                if nv.is_zero() {
                    a.remove(i);
                } else {
                    *slot = nv;
                }
            }
            None => {
                a.insert(*i, -prod);
            }
        }
    }
}

struct BasisVector {
    /// Reduced column, leading entry normalized to one.
    reduced: SparseVec,
    /// The reduced column as a combination of original columns.
    expression: SparseVec,
}

pub struct ColumnSolver {
    field: FieldSpec,
    by_lead: HashMap<usize, BasisVector>,
    pivots: Vec<usize>,
}

impl ColumnSolver {
    pub fn new<I: IntoIterator<Item = SparseVec>>(field: FieldSpec, columns: I) -> Self {
        let mut s = Self { field, by_lead: HashMap::new(), pivots: Vec::new() };
        for (j, col) in columns.into_iter().enumerate() {
            let mut expression = SparseVec::new();
            expression.insert(j, field.one());
            let (reduced, expression) = s.reduce(col, expression);
            if let Some((&lead, lc)) = reduced.iter().next() {
                let inv = lc.inv().expect("nonzero leading entry");
                let scale = |v: SparseVec| v.into_iter().map(|(i, x)| (i, &x * &inv)).collect::<SparseVec>();
                s.by_lead.insert(lead, BasisVector { reduced: scale(reduced), expression: scale(expression) });
                s.pivots.push(j);
            }
        }
        s
    }

    /// Reduces `v` by leading entries, tracking the same operations on
    /// `expr`. Stops at the first leading row without a basis vector.
    fn reduce(&self, mut v: SparseVec, mut expr: SparseVec) -> (SparseVec, SparseVec) {
        let mut floor = 0;
        while let Some((&lead, c)) = v.range(floor..).next() {
            let Some(b) = self.by_lead.get(&lead) else {
                break;
            };
            let c = c.clone();
            sub_scaled(&mut v, &c, &b.reduced);
            sub_scaled(&mut expr, &c, &b.expression);
            floor = lead + 1;
        }
        (v, expr)
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Indices of the columns that are independent of all earlier columns.
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// A solution of `A x = b` supported on pivot columns, if one exists.
    pub fn solve(&self, b: &SparseVec) -> Option<SparseVec> {
        let (rest, expr) = self.reduce(b.clone(), SparseVec::new());
        if !rest.is_empty() {
            return None;
        }
        // b - sum c_k u_k = 0, and expr = -sum c_k x_k
        Some(expr.into_iter().map(|(i, x)| (i, -x)).filter(|(_, x)| !x.is_zero()).collect())
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }
}
