//! The Koszul complex `K_r(m) = Λ_R(s_1, ..., s_r)` with `d(s_i) = t_i^{m+1}`.

use std::collections::BTreeMap;

use super::{Augmentation, FreeComplex, Generator, ProductTable};
use crate::ring::{zero_element, Element, PolyMatrix, Polynomial, RingSpec};

/// `K_r(m)` together with its exterior product. Generator `k` is `s_I` for
/// the subset `I = subsets[k]` (bit `i` stands for `s_{i+1}`); subsets are
/// ordered by cardinality and then lexicographically.
#[derive(Clone, Debug)]
pub struct KoszulComplex {
    complex: FreeComplex,
    m: u32,
    subsets: Vec<u32>,
    products: ProductTable,
}

fn subset_order(r: usize) -> Vec<u32> {
    let mut subsets: Vec<u32> = (0..1u32 << r).collect();
    subsets.sort_by_key(|&s| (s.count_ones(), members(s)));
    subsets
}

fn members(s: u32) -> Vec<u32> {
    (0..32).filter(|i| s >> i & 1 == 1).collect()
}

/// Name of `s_I`: `s` followed by the one-based indices in `I`.
pub fn subset_name(s: u32) -> String {
    let mut name = String::from("s");
    for i in members(s) {
        name.push_str(&(i + 1).to_string());
    }
    name
}

/// Sign of `s_a ∧ s_b` for disjoint `a`, `b`: the parity of pairs `i ∈ a`,
/// `j ∈ b` with `i > j`.
fn shuffle_sign(a: u32, b: u32) -> bool {
    let mut inversions = 0;
    for j in members(b) {
        inversions += (a >> (j + 1)).count_ones();
    }
    inversions % 2 == 1
}

/// Degree of `s_I` for `|I| = len`: `len * m` when `deg t_i = 1`, and
/// `len * (2m + 1)` when `deg t_i = 2`.
pub fn koszul_degree(ring: RingSpec, m: u32, len: u32) -> i64 {
    let per = if ring.weight == 1 { m as i64 } else { 2 * m as i64 + 1 };
    len as i64 * per
}

pub fn koszul(ring: RingSpec, m: u32) -> KoszulComplex {
    let r = ring.num_vars;
    let subsets = subset_order(r);
    let index: BTreeMap<u32, usize> = subsets.iter().enumerate().map(|(k, &s)| (s, k)).collect();
    let n = subsets.len();
    let generators =
        subsets.iter().map(|&s| Generator::new(subset_name(s), koszul_degree(ring, m, s.count_ones()))).collect();
    let mut d = PolyMatrix::zeros(ring, n, n);
    for (col, &s) in subsets.iter().enumerate() {
        for (j, i) in members(s).into_iter().enumerate() {
            let mut p = Polynomial::var_power(ring, i as usize, m + 1);
            if j % 2 == 1 {
                p = p.neg();
            }
            d.set(index[&(s & !(1 << i))], col, p);
        }
    }
    let complex = FreeComplex::from_parts_unchecked(ring, generators, d);
    let mut products = BTreeMap::new();
    for (a, &sa) in subsets.iter().enumerate() {
        for (b, &sb) in subsets.iter().enumerate() {
            if sa & sb != 0 {
                continue;
            }
            let mut v = zero_element(ring, n);
            let one = Polynomial::one(ring);
            v[index[&(sa | sb)]] = if shuffle_sign(sa, sb) { one.neg() } else { one };
            products.insert((a, b), v);
        }
    }
    let parity = subsets.iter().map(|s| s.count_ones() % 2 == 1).collect();
    KoszulComplex { complex, m, subsets, products: ProductTable::new(0, parity, products) }
}

impl KoszulComplex {
    pub fn complex(&self) -> &FreeComplex {
        &self.complex
    }

    pub fn into_complex(self) -> FreeComplex {
        self.complex
    }

    pub fn ring(&self) -> RingSpec {
        self.complex.ring()
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn len(&self) -> usize {
        self.subsets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subsets.is_empty()
    }

    /// Bit mask of the subset indexing generator `k`.
    pub fn subset(&self, k: usize) -> u32 {
        self.subsets[k]
    }

    pub fn index_of_subset(&self, s: u32) -> usize {
        self.subsets.iter().position(|&x| x == s).expect("subset out of range")
    }

    /// Index of `s_I` for one-based variable indices `I`.
    pub fn index_of(&self, indices: &[usize]) -> usize {
        self.index_of_subset(indices.iter().fold(0, |acc, &i| acc | 1 << (i - 1)))
    }

    pub fn exterior_length(&self, k: usize) -> u32 {
        self.subsets[k].count_ones()
    }

    pub fn products(&self) -> &ProductTable {
        &self.products
    }

    pub fn wedge(&self, x: &[Polynomial], y: &[Polynomial]) -> Element {
        self.products.multiply(self.ring(), x, y)
    }

    /// The canonical augmentation `ε(1) = 1`.
    pub fn augmentation(&self) -> Augmentation {
        let f = self.ring().field;
        let mut values = vec![f.zero(); self.len()];
        values[0] = f.one();
        Augmentation::new(f, values)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::FieldSpec;

    #[test]
    fn smallest_case() {
        let ring = RingSpec::new(FieldSpec::rationals(), 1, 1).unwrap();
        let k = koszul(ring, 0);
        assert_eq!(k.complex().names(), ["s", "s1"]);
        assert_eq!(k.complex().differential().entry(0, 1), Polynomial::var(ring, 0));
    }

    #[test]
    fn top_cell_boundary_r3_m1() {
        let ring = RingSpec::new(FieldSpec::rationals(), 3, 1).unwrap();
        let k = koszul(ring, 1);
        let c = k.complex();
        assert_eq!(c.names(), ["s", "s1", "s2", "s3", "s12", "s13", "s23", "s123"]);
        let top = k.index_of(&[1, 2, 3]);
        assert_eq!(c.degree(top), 3);
        let d = c.differential();
        let t = |i| Polynomial::var_power(ring, i, 2);
        assert_eq!(d.entry(k.index_of(&[2, 3]), top), t(0));
        assert_eq!(d.entry(k.index_of(&[1, 3]), top), t(1).neg());
        assert_eq!(d.entry(k.index_of(&[1, 2]), top), t(2));
        assert!(c.validate().is_ok());
    }

    #[test]
    fn weight_two_degrees() {
        let ring = RingSpec::new(FieldSpec::rationals(), 2, 2).unwrap();
        let k = koszul(ring, 0);
        let c = k.complex();
        assert_eq!(c.degree(k.index_of(&[1])), 1);
        assert_eq!(c.degree(k.index_of(&[1, 2])), 2);
        let top = k.index_of(&[1, 2]);
        assert_eq!(c.differential().entry(k.index_of(&[2]), top), Polynomial::var(ring, 0));
        assert_eq!(c.differential().entry(k.index_of(&[1]), top), Polynomial::var(ring, 1).neg());
        assert!(c.validate().is_ok());
    }

    #[test]
    fn wedge_signs() {
        let ring = RingSpec::new(FieldSpec::rationals(), 3, 1).unwrap();
        let k = koszul(ring, 1);
        let c = k.complex();
        let s = |i: &[usize]| c.basis_element(k.index_of(i));
        assert_eq!(k.wedge(&s(&[1]), &s(&[2])), s(&[1, 2]));
        let neg: Element = s(&[1, 2]).iter().map(Polynomial::neg).collect();
        assert_eq!(k.wedge(&s(&[2]), &s(&[1])), neg);
        assert_eq!(k.wedge(&s(&[1]), &s(&[1])), c.zero_element());
        assert_eq!(k.wedge(&s(&[1, 3]), &s(&[2])), neg_of(&s(&[1, 2, 3])));
    }

    fn neg_of(x: &[Polynomial]) -> Element {
        x.iter().map(Polynomial::neg).collect()
    }

    #[test]
    fn product_table_is_a_dga_structure() {
        for (p, w, m) in [(0, 1, 0), (0, 1, 2), (2, 1, 1), (0, 2, 1), (3, 1, 0)] {
            let field = if p == 0 { FieldSpec::rationals() } else { FieldSpec::prime(p) };
            let ring = RingSpec::new(field, 3, w).unwrap();
            let k = koszul(ring, m);
            k.products().validate(k.complex()).unwrap();
            k.augmentation().validate(k.complex()).unwrap();
        }
    }
}
