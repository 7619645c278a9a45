//! Free graded cochain complexes over `R`, the Koszul family `K_r(m)`,
//! reduction modulo powers of the variables and homology over `k`.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::ring::{zero_element, Element, FieldSpec, Mat, PolyMatrix, Polynomial, RingSpec, Scalar};

pub mod format;
pub mod graded;
pub mod koszul;
pub mod product;
pub mod quotient;
pub mod random;

pub use graded::GradedPiece;
pub use koszul::{koszul, KoszulComplex};
pub use product::ProductTable;
pub use quotient::{homology_k, min_generators_of_homology, tensor_quotient, FiniteComplex, Homology, QuotientComplex};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Generator {
    pub name: String,
    pub degree: i64,
}

impl Generator {
    pub fn new(name: impl Into<String>, degree: i64) -> Self {
        Self { name: name.into(), degree }
    }
}

/// Names must be identifiers that cannot be confused with a variable `t<i>`.
pub fn is_valid_generator_name(name: &str) -> bool {
    let mut chars = name.chars();
    let Some(first) = chars.next() else {
        return false;
    };
    if !(first.is_ascii_alphabetic() || first == '_') {
        return false;
    }
    if !name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
        return false;
    }
    !(first == 't' && name.len() > 1 && name[1..].chars().all(|c| c.is_ascii_digit()))
}

/// An invariant of [`FreeComplex`] that fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// `d(d(e_column)) != 0`.
    SquareNonzero { column: usize, generator: String },
    /// The entry `D[row][column]` does not have degree
    /// `deg(e_column) + 1 - deg(e_row)`.
    Inhomogeneous { row: usize, column: usize, entry: String, expected: i64 },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::SquareNonzero { column, generator } => {
                write!(f, "d(d({generator})) != 0 (column {column})")
            }
            Violation::Inhomogeneous { row, column, entry, expected } => {
                write!(f, "entry ({row}, {column}) = {entry} is not homogeneous of degree {expected}")
            }
        }
    }
}

/// A finitely generated free graded `R`-module with a differential of degree
/// `+1`. Column `j` of the differential holds `d(e_j)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeComplex {
    ring: RingSpec,
    generators: Vec<Generator>,
    differential: PolyMatrix,
}

impl FreeComplex {
    /// Checks shape and names only; see [`FreeComplex::validate`] for the
    /// complex invariants.
    pub fn new(ring: RingSpec, generators: Vec<Generator>, differential: PolyMatrix) -> Result<Self> {
        ring.ensure_same(&differential.ring())?;
        let n = generators.len();
        if differential.rows() != n || differential.cols() != n {
            return Err(Error::Shape(format!(
                "differential is {}x{} for {n} generators",
                differential.rows(),
                differential.cols()
            )));
        }
        let mut seen = HashMap::new();
        for (i, g) in generators.iter().enumerate() {
            if !is_valid_generator_name(&g.name) {
                return Err(Error::InvalidComplex(format!("invalid generator name '{}'", g.name)));
            }
            if let Some(j) = seen.insert(g.name.as_str(), i) {
                return Err(Error::InvalidComplex(format!("generator '{}' appears at {j} and {i}", g.name)));
            }
        }
        Ok(Self { ring, generators, differential })
    }

    /// [`FreeComplex::new`] followed by [`FreeComplex::validate`].
    pub fn validated(ring: RingSpec, generators: Vec<Generator>, differential: PolyMatrix) -> Result<Self> {
        let c = Self::new(ring, generators, differential)?;
        c.ensure_valid()?;
        Ok(c)
    }

    pub fn zero(ring: RingSpec) -> Self {
        Self { ring, generators: Vec::new(), differential: PolyMatrix::zeros(ring, 0, 0) }
    }

    pub fn ring(&self) -> RingSpec {
        self.ring
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn degree(&self, i: usize) -> i64 {
        self.generators[i].degree
    }

    pub fn name(&self, i: usize) -> &str {
        &self.generators[i].name
    }

    pub fn names(&self) -> Vec<String> {
        self.generators.iter().map(|g| g.name.clone()).collect()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g.name == name)
    }

    pub fn differential(&self) -> &PolyMatrix {
        &self.differential
    }

    pub fn apply_d(&self, x: &[Polynomial]) -> Element {
        self.differential.apply(x)
    }

    pub fn zero_element(&self) -> Element {
        zero_element(self.ring, self.len())
    }

    /// The element `e_i`.
    pub fn basis_element(&self, i: usize) -> Element {
        let mut x = self.zero_element();
        x[i] = Polynomial::one(self.ring);
        x
    }

    /// Every violated invariant, or `Ok` when `d^2 = 0` and all entries are
    /// homogeneous of the right degree.
    pub fn validate(&self) -> std::result::Result<(), Vec<Violation>> {
        let mut out = Vec::new();
        for (i, j, p) in self.differential.entries() {
            let expected = self.degree(j) + 1 - self.degree(i);
            if !p.weighted_degree().compatible_with(expected) {
                out.push(Violation::Inhomogeneous { row: i, column: j, entry: p.to_string(), expected });
            }
        }
        let sq = self.differential.mul(&self.differential);
        for j in 0..self.len() {
            if !sq.column(j).is_empty() {
                out.push(Violation::SquareNonzero { column: j, generator: self.name(j).to_string() });
            }
        }
        if out.is_empty() {
            Ok(())
        } else {
            Err(out)
        }
    }

    pub fn ensure_valid(&self) -> Result<()> {
        self.validate()
            .map_err(|v| Error::InvalidComplex(v.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ")))
    }

    /// The complex `C ⊗_R k`: constant terms of the differential.
    pub fn constant_part(&self) -> Mat {
        let mut m = Mat::zeros(self.ring.field, self.len(), self.len());
        for (i, j, p) in self.differential.entries() {
            m.set(i, j, p.constant_term());
        }
        m
    }

    /// Direct sum with generators of `other` appended; names of `other` get
    /// `suffix` appended.
    pub fn direct_sum(&self, other: &FreeComplex, suffix: &str) -> Result<FreeComplex> {
        self.ring.ensure_same(&other.ring)?;
        let n = self.len();
        let mut gens = self.generators.clone();
        gens.extend(other.generators.iter().map(|g| Generator::new(format!("{}{suffix}", g.name), g.degree)));
        let mut d = PolyMatrix::zeros(self.ring, n + other.len(), n + other.len());
        for (i, j, p) in self.differential.entries() {
            d.set(i, j, p.clone());
        }
        for (i, j, p) in other.differential.entries() {
            d.set(n + i, n + j, p.clone());
        }
        FreeComplex::new(self.ring, gens, d)
    }

    /// The same complex with generators listed in the order `perm`
    /// (new index `k` is old index `perm[k]`).
    pub fn permuted(&self, perm: &[usize]) -> FreeComplex {
        let gens = perm.iter().map(|&i| self.generators[i].clone()).collect();
        let d = self.differential.select_rows(perm).select_columns(perm);
        FreeComplex { ring: self.ring, generators: gens, differential: d }
    }

    pub(crate) fn from_parts_unchecked(ring: RingSpec, generators: Vec<Generator>, differential: PolyMatrix) -> Self {
        Self { ring, generators, differential }
    }
}

/// A `k`-linear functional `ε` on generators, extended to `C` by
/// `ε(Σ p_i e_i) = Σ ε_i p_i(0)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Augmentation {
    field: FieldSpec,
    values: Vec<Scalar>,
}

impl Augmentation {
    pub fn new(field: FieldSpec, values: Vec<Scalar>) -> Self {
        Self { field, values }
    }

    pub fn values(&self) -> &[Scalar] {
        &self.values
    }

    pub fn apply(&self, x: &[Polynomial]) -> Scalar {
        let mut acc = self.field.zero();
        for (e, p) in self.values.iter().zip(x) {
            if !e.is_zero() {
                acc = &acc + &(e * &p.constant_term());
            }
        }
        acc
    }

    /// Checks length, that only degree-0 generators carry values, and that
    /// `ε ∘ d = 0`.
    pub fn validate(&self, c: &FreeComplex) -> Result<()> {
        if self.values.len() != c.len() {
            return Err(Error::Shape(format!(
                "augmentation has {} values for {} generators",
                self.values.len(),
                c.len()
            )));
        }
        for (i, v) in self.values.iter().enumerate() {
            if !v.is_zero() && c.degree(i) != 0 {
                return Err(Error::InvalidComplex(format!(
                    "augmentation is nonzero on {} of degree {}",
                    c.name(i),
                    c.degree(i)
                )));
            }
        }
        for j in 0..c.len() {
            if !self.apply(&c.differential().column_element(j)).is_zero() {
                return Err(Error::InvalidComplex(format!("augmentation does not vanish on d({})", c.name(j))));
            }
        }
        Ok(())
    }

    /// `ε ∘ f` for a map whose columns are images of source generators.
    pub fn pull_back(&self, f: &PolyMatrix) -> Augmentation {
        Augmentation { field: self.field, values: (0..f.cols()).map(|j| self.apply(&f.column_element(j))).collect() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generator_names() {
        assert!(is_valid_generator_name("s12"));
        assert!(is_valid_generator_name("e_1"));
        assert!(is_valid_generator_name("t"));
        assert!(is_valid_generator_name("tx1"));
        assert!(!is_valid_generator_name("t3"));
        assert!(!is_valid_generator_name("1a"));
        assert!(!is_valid_generator_name(""));
    }

    #[test]
    fn square_nonzero_witness() {
        let ring = RingSpec::new(FieldSpec::prime(2), 1, 1).unwrap();
        let mut d = PolyMatrix::zeros(ring, 2, 2);
        d.set(1, 0, Polynomial::one(ring));
        d.set(0, 1, Polynomial::one(ring));
        let c = FreeComplex::new(ring, vec![Generator::new("e1", 0), Generator::new("e2", 1)], d).unwrap();
        let v = c.validate().unwrap_err();
        assert!(v.contains(&Violation::SquareNonzero { column: 0, generator: "e1".into() }));
    }

    #[test]
    fn duplicate_names_rejected() {
        let ring = RingSpec::new(FieldSpec::rationals(), 1, 1).unwrap();
        let gens = vec![Generator::new("a", 0), Generator::new("a", 1)];
        assert!(FreeComplex::new(ring, gens, PolyMatrix::zeros(ring, 2, 2)).is_err());
    }
}
