//! Structure constants of an `R`-bilinear product on a free complex.

use std::collections::BTreeMap;

use super::FreeComplex;
use crate::error::{Error, Result};
use crate::ring::{zero_element, Element, Polynomial, RingSpec};

/// `e_a * e_b` for basis generators, with a unit generator and a sign parity
/// per generator used in the Leibniz rule
/// `d(xy) = d(x) y + (-1)^{parity(x)} x d(y)`. Missing products are zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductTable {
    unit: usize,
    parity: Vec<bool>,
    products: BTreeMap<(usize, usize), Element>,
}

impl ProductTable {
    pub fn new(unit: usize, parity: Vec<bool>, products: BTreeMap<(usize, usize), Element>) -> Self {
        let products = products.into_iter().filter(|(_, v)| v.iter().any(|p| !p.is_zero())).collect();
        Self { unit, parity, products }
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    pub fn parity(&self, i: usize) -> bool {
        self.parity[i]
    }

    pub fn parities(&self) -> &[bool] {
        &self.parity
    }

    /// Nonzero products in `(a, b)` order.
    pub fn entries(&self) -> impl Iterator<Item = (&(usize, usize), &Element)> {
        self.products.iter()
    }

    pub fn product(&self, a: usize, b: usize) -> Option<&Element> {
        self.products.get(&(a, b))
    }

    /// Replaces one structure constant (used to build broken tables in tests).
    pub fn set_product(&mut self, a: usize, b: usize, value: Element) {
        if value.iter().all(Polynomial::is_zero) {
            self.products.remove(&(a, b));
        } else {
            self.products.insert((a, b), value);
        }
    }

    /// The bilinear extension `x * y`.
    pub fn multiply(&self, ring: RingSpec, x: &[Polynomial], y: &[Polynomial]) -> Element {
        let n = x.len();
        let mut out = zero_element(ring, n);
        for (a, xa) in x.iter().enumerate() {
            if xa.is_zero() {
                continue;
            }
            for (b, yb) in y.iter().enumerate() {
                if yb.is_zero() {
                    continue;
                }
                let Some(prod) = self.products.get(&(a, b)) else {
                    continue;
                };
                let coeff = xa.mul(yb);
                for (k, p) in prod.iter().enumerate() {
                    if !p.is_zero() {
                        out[k] = out[k].add(&p.mul(&coeff));
                    }
                }
            }
        }
        out
    }

    /// Checks the unit law, associativity and the Leibniz rule on all basis
    /// generators.
    pub fn validate(&self, c: &FreeComplex) -> Result<()> {
        let n = c.len();
        let ring = c.ring();
        if self.parity.len() != n || self.unit >= n {
            return Err(Error::InvalidProductTable(format!("table does not match {n} generators")));
        }
        for (&(a, b), v) in &self.products {
            if a >= n || b >= n || v.len() != n {
                return Err(Error::InvalidProductTable(format!("product ({a}, {b}) out of range")));
            }
        }
        let basis: Vec<Element> = (0..n).map(|i| c.basis_element(i)).collect();
        for (i, e) in basis.iter().enumerate() {
            if self.multiply(ring, &basis[self.unit], e) != *e || self.multiply(ring, e, &basis[self.unit]) != *e {
                return Err(Error::InvalidProductTable(format!(
                    "{} is not a unit for {}",
                    c.name(self.unit),
                    c.name(i)
                )));
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = self.multiply(ring, &basis[a], &basis[b]);
                for cc in 0..n {
                    let left = self.multiply(ring, &ab, &basis[cc]);
                    let bc = self.multiply(ring, &basis[b], &basis[cc]);
                    let right = self.multiply(ring, &basis[a], &bc);
                    if left != right {
                        return Err(Error::InvalidProductTable(format!(
                            "associativity fails on ({} * {}) * {}",
                            c.name(a),
                            c.name(b),
                            c.name(cc)
                        )));
                    }
                }
                let lhs = c.apply_d(&ab);
                let da = c.apply_d(&basis[a]);
                let db = c.apply_d(&basis[b]);
                let first = self.multiply(ring, &da, &basis[b]);
                let mut second = self.multiply(ring, &basis[a], &db);
                if self.parity[a] {
                    second = second.iter().map(Polynomial::neg).collect();
                }
                let rhs: Element = first.iter().zip(&second).map(|(p, q)| p.add(q)).collect();
                if lhs != rhs {
                    return Err(Error::InvalidProductTable(format!(
                        "Leibniz rule fails on {} * {}",
                        c.name(a),
                        c.name(b)
                    )));
                }
            }
        }
        Ok(())
    }
}
