use std::collections::BTreeMap;

use super::poly::{Polynomial, RingSpec};
use crate::error::{Error, Result};

/// A coordinate vector of polynomials over some generator basis.
pub type Element = Vec<Polynomial>;

pub fn zero_element(ring: RingSpec, len: usize) -> Element {
    vec![Polynomial::zero(ring); len]
}

/// Sparse matrix with polynomial entries, stored column by column. Column `j`
/// holds the image of the `j`-th basis vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    ring: RingSpec,
    rows: usize,
    columns: Vec<BTreeMap<usize, Polynomial>>,
}

impl PolyMatrix {
    pub fn zeros(ring: RingSpec, rows: usize, cols: usize) -> Self {
        Self { ring, rows, columns: vec![BTreeMap::new(); cols] }
    }

    pub fn identity(ring: RingSpec, n: usize) -> Self {
        let mut m = Self::zeros(ring, n, n);
        for i in 0..n {
            m.set(i, i, Polynomial::one(ring));
        }
        m
    }

    /// Builds a matrix whose `j`-th column is the element `cols[j]`.
    pub fn from_columns(ring: RingSpec, rows: usize, cols: &[Element]) -> Self {
        let mut m = Self::zeros(ring, rows, cols.len());
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length");
            for (i, p) in col.iter().enumerate() {
                m.set(i, j, p.clone());
            }
        }
        m
    }

    pub fn ring(&self) -> RingSpec {
        self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.columns.len()
    }

    pub fn get(&self, row: usize, col: usize) -> Option<&Polynomial> {
        self.columns[col].get(&row)
    }

    /// Entry as an owned polynomial, zero when absent.
    pub fn entry(&self, row: usize, col: usize) -> Polynomial {
        self.get(row, col).cloned().unwrap_or_else(|| Polynomial::zero(self.ring))
    }

    pub fn set(&mut self, row: usize, col: usize, p: Polynomial) {
        assert!(row < self.rows && col < self.cols(), "index out of range");
        assert_eq!(p.ring(), self.ring, "ring mismatch");
        if p.is_zero() {
            self.columns[col].remove(&row);
        } else {
            self.columns[col].insert(row, p);
        }
    }

    pub fn column(&self, col: usize) -> &BTreeMap<usize, Polynomial> {
        &self.columns[col]
    }

    pub fn column_element(&self, col: usize) -> Element {
        let mut v = zero_element(self.ring, self.rows);
        for (i, p) in &self.columns[col] {
            v[*i] = p.clone();
        }
        v
    }

    /// Iterates over the nonzero entries as `(row, col, entry)`.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Polynomial)> {
        self.columns.iter().enumerate().flat_map(|(j, c)| c.iter().map(move |(i, p)| (*i, j, p)))
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(BTreeMap::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(BTreeMap::is_empty)
    }

    fn check_shape(&self, other: &PolyMatrix, what: &str) -> Result<()> {
        self.ring.ensure_same(&other.ring)?;
        if self.rows != other.rows || self.cols() != other.cols() {
            return Err(Error::Shape(format!(
                "{what}: {}x{} vs {}x{}",
                self.rows,
                self.cols(),
                other.rows,
                other.cols()
            )));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        self.check_shape(other, "matrix sum")?;
        let mut out = self.clone();
        for (i, j, p) in other.entries() {
            let v = out.entry(i, j).add(p);
            out.set(i, j, v);
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        self.try_add(&other.neg())
    }

    pub fn neg(&self) -> PolyMatrix {
        let mut out = self.clone();
        for col in &mut out.columns {
            for p in col.values_mut() {
                *p = p.neg();
            }
        }
        out
    }

    /// `self * other`.
    pub fn try_mul(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        self.ring.ensure_same(&other.ring)?;
        if self.cols() != other.rows {
            return Err(Error::Shape(format!(
                "matrix product: {}x{} times {}x{}",
                self.rows,
                self.cols(),
                other.rows,
                other.cols()
            )));
        }
        let mut out = PolyMatrix::zeros(self.ring, self.rows, other.cols());
        for (j, col) in other.columns.iter().enumerate() {
            let mut acc: BTreeMap<usize, Polynomial> = BTreeMap::new();
            for (k, b) in col {
                for (i, a) in &self.columns[*k] {
                    let prod = a.mul(b);
                    let slot = acc.entry(*i).or_insert_with(|| Polynomial::zero(self.ring));
                    *slot = slot.add(&prod);
                }
            }
            acc.retain(|_, p| !p.is_zero());
            out.columns[j] = acc;
        }
        Ok(out)
    }

    pub fn mul(&self, other: &PolyMatrix) -> PolyMatrix {
        self.try_mul(other).expect("matrix product shape")
    }

    /// Applies the matrix to a coordinate vector.
    pub fn apply(&self, x: &[Polynomial]) -> Element {
        assert_eq!(x.len(), self.cols(), "vector length");
        let mut out = zero_element(self.ring, self.rows);
        for (j, xj) in x.iter().enumerate() {
            if xj.is_zero() {
                continue;
            }
            for (i, a) in &self.columns[j] {
                out[*i] = out[*i].add(&a.mul(xj));
            }
        }
        out
    }

    pub fn select_columns(&self, cols: &[usize]) -> PolyMatrix {
        PolyMatrix {
            ring: self.ring,
            rows: self.rows,
            columns: cols.iter().map(|&j| self.columns[j].clone()).collect(),
        }
    }

    pub fn select_rows(&self, rows: &[usize]) -> PolyMatrix {
        let index: BTreeMap<usize, usize> = rows.iter().enumerate().map(|(new, &old)| (old, new)).collect();
        let columns = self
            .columns
            .iter()
            .map(|c| c.iter().filter_map(|(i, p)| index.get(i).map(|&n| (n, p.clone()))).collect())
            .collect();
        PolyMatrix { ring: self.ring, rows: rows.len(), columns }
    }

    pub fn transpose(&self) -> PolyMatrix {
        let mut out = PolyMatrix::zeros(self.ring, self.cols(), self.rows);
        for (i, j, p) in self.entries() {
            out.columns[i].insert(j, p.clone());
        }
        out
    }

    /// Dense row-major copy, used by elimination routines.
    pub fn to_dense_rows(&self) -> Vec<Vec<Polynomial>> {
        let mut rows = vec![vec![Polynomial::zero(self.ring); self.cols()]; self.rows];
        for (i, j, p) in self.entries() {
            rows[i][j] = p.clone();
        }
        rows
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::FieldSpec;

    #[test]
    fn product_and_identity() {
        let r = RingSpec::new(FieldSpec::rationals(), 2, 1).unwrap();
        let t1 = Polynomial::var(r, 0);
        let t2 = Polynomial::var(r, 1);
        let a = PolyMatrix::from_columns(r, 2, &[vec![t1.clone(), t2.clone()], vec![t2.clone(), t1.clone()]]);
        let id = PolyMatrix::identity(r, 2);
        assert_eq!(a.mul(&id), a);
        assert_eq!(id.mul(&a), a);
        let sq = a.mul(&a);
        assert_eq!(sq.entry(0, 0), t1.mul(&t1).add(&t2.mul(&t2)));
        assert!(a.try_mul(&PolyMatrix::zeros(r, 3, 1)).is_err());
        assert_eq!(a.apply(&[Polynomial::one(r), Polynomial::zero(r)]), a.column_element(0));
    }
}
