//! Sparse multivariate polynomials over `Q` or `F_p`.
//!
//! Terms are kept sorted in descending graded-lexicographic order with
//! `t1 > t2 > ... > tr`, and zero coefficients are never stored, so two
//! polynomials are equal exactly when their term lists are.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use super::scalar::{FieldSpec, Scalar};
use crate::error::{Error, Result};

/// Maximum number of polynomial variables supported.
pub const MAX_VARS: usize = 8;

/// `R = k[t_1, ..., t_r]` together with its grading convention
/// `deg t_i = weight`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RingSpec {
    pub field: FieldSpec,
    pub num_vars: usize,
    pub weight: u32,
}

impl RingSpec {
    pub fn new(field: FieldSpec, num_vars: usize, weight: u32) -> Result<Self> {
        if num_vars == 0 || num_vars > MAX_VARS {
            return Err(Error::InvalidRing(format!("number of variables must be in 1..={MAX_VARS}, got {num_vars}")));
        }
        if weight != 1 && weight != 2 {
            return Err(Error::InvalidRing(format!("variable weight must be 1 or 2, got {weight}")));
        }
        Ok(Self { field, num_vars, weight })
    }

    pub fn ensure_same(&self, other: &RingSpec) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::RingMismatch(self.to_string(), other.to_string()))
        }
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[t1..t{}] (deg t = {})", self.field, self.num_vars, self.weight)
    }
}

/// Exponent vector. The derived ordering compares total degree first and then
/// exponents from `t1` onwards, i.e. graded lexicographic order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    degree: u32,
    exps: [u16; MAX_VARS],
}

impl Monomial {
    pub const ONE: Monomial = Monomial { degree: 0, exps: [0; MAX_VARS] };

    pub fn new(exponents: &[u32]) -> Self {
        assert!(exponents.len() <= MAX_VARS, "too many variables");
        let mut exps = [0u16; MAX_VARS];
        let mut degree = 0;
        for (slot, &e) in exps.iter_mut().zip(exponents) {
            *slot = u16::try_from(e).expect("exponent overflow");
            degree += e;
        }
        Self { degree, exps }
    }

    /// `t_var^exp` with a zero-based variable index.
    pub fn var_power(var: usize, exp: u32) -> Self {
        let mut exps = [0u16; MAX_VARS];
        exps[var] = u16::try_from(exp).expect("exponent overflow");
        Self { degree: exp, exps }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn exponent(&self, var: usize) -> u32 {
        self.exps[var] as u32
    }

    pub fn exponents(&self, num_vars: usize) -> Vec<u32> {
        self.exps[..num_vars].iter().map(|&e| e as u32).collect()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut exps = [0u16; MAX_VARS];
        for (i, slot) in exps.iter_mut().enumerate() {
            *slot = self.exps[i].checked_add(other.exps[i]).expect("exponent overflow");
        }
        Monomial { degree: self.degree + other.degree, exps }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self` divides `other`.
    fn quotient_of(&self, other: &Monomial) -> Monomial {
        let mut exps = [0u16; MAX_VARS];
        for (i, slot) in exps.iter_mut().enumerate() {
            *slot = other.exps[i] - self.exps[i];
        }
        Monomial { degree: other.degree - self.degree, exps }
    }

    /// True if every exponent is strictly below the matching bound.
    pub fn below(&self, bounds: &[u32]) -> bool {
        bounds.iter().enumerate().all(|(i, &a)| (self.exps[i] as u32) < a)
    }

    /// All monomials of total degree `degree` in `num_vars` variables, in
    /// descending graded-lexicographic order.
    pub fn all_of_degree(num_vars: usize, degree: u32) -> Vec<Monomial> {
        let mut out = Vec::new();
        let mut current = vec![0u32; num_vars];
        fill_monomials(&mut current, 0, degree, &mut out);
        out
    }

    /// All monomials with `exps[i] < bounds[i]`, in ascending degree and then
    /// descending graded-lexicographic order within each degree.
    pub fn all_below(bounds: &[u32]) -> Vec<Monomial> {
        let max: u32 = bounds.iter().map(|a| a.saturating_sub(1)).sum();
        let mut out = Vec::new();
        for d in 0..=max {
            out.extend(Monomial::all_of_degree(bounds.len(), d).into_iter().filter(|m| m.below(bounds)));
        }
        out
    }

    pub fn display(&self, num_vars: usize) -> String {
        let mut parts = Vec::new();
        for i in 0..num_vars {
            match self.exps[i] {
                0 => {}
                1 => parts.push(format!("t{}", i + 1)),
                e => parts.push(format!("t{}^{}", i + 1, e)),
            }
        }
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

fn fill_monomials(current: &mut Vec<u32>, var: usize, remaining: u32, out: &mut Vec<Monomial>) {
    if var + 1 == current.len() {
        current[var] = remaining;
        out.push(Monomial::new(current));
        current[var] = 0;
        return;
    }
    for e in (0..=remaining).rev() {
        current[var] = e;
        fill_monomials(current, var + 1, remaining - e, out);
    }
    current[var] = 0;
}

/// Result of [`Polynomial::weighted_degree`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WeightedDegree {
    /// The zero polynomial; compatible with every degree.
    Zero,
    Homogeneous(u32),
    Inhomogeneous,
}

impl WeightedDegree {
    /// True when the polynomial may sit in a slot of the given degree.
    pub fn compatible_with(&self, degree: i64) -> bool {
        match self {
            WeightedDegree::Zero => true,
            WeightedDegree::Homogeneous(d) => *d as i64 == degree,
            WeightedDegree::Inhomogeneous => false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial {
    ring: RingSpec,
    terms: Vec<(Monomial, Scalar)>,
}

impl Polynomial {
    pub fn zero(ring: RingSpec) -> Self {
        Self { ring, terms: Vec::new() }
    }

    pub fn one(ring: RingSpec) -> Self {
        Self::constant(ring, ring.field.one())
    }

    pub fn constant(ring: RingSpec, c: Scalar) -> Self {
        Self::term(ring, Monomial::ONE, c)
    }

    pub fn term(ring: RingSpec, m: Monomial, c: Scalar) -> Self {
        debug_assert_eq!(c.field(), ring.field);
        if c.is_zero() {
            Self::zero(ring)
        } else {
            Self { ring, terms: vec![(m, c)] }
        }
    }

    /// The variable `t_{var+1}` (zero-based index).
    pub fn var(ring: RingSpec, var: usize) -> Self {
        assert!(var < ring.num_vars, "variable index out of range");
        Self::term(ring, Monomial::var_power(var, 1), ring.field.one())
    }

    pub fn var_power(ring: RingSpec, var: usize, exp: u32) -> Self {
        assert!(var < ring.num_vars, "variable index out of range");
        Self::term(ring, Monomial::var_power(var, exp), ring.field.one())
    }

    /// Builds a normalized polynomial from arbitrary (possibly repeated or
    /// zero) terms.
    pub fn from_terms<I: IntoIterator<Item = (Monomial, Scalar)>>(ring: RingSpec, terms: I) -> Self {
        let mut acc: BTreeMap<Monomial, Scalar> = BTreeMap::new();
        for (m, c) in terms {
            match acc.get_mut(&m) {
                Some(slot) => *slot = &*slot + &c,
                None => {
                    acc.insert(m, c);
                }
            }
        }
        let terms = acc.into_iter().rev().filter(|(_, c)| !c.is_zero()).collect();
        Self { ring, terms }
    }

    pub fn ring(&self) -> RingSpec {
        self.ring
    }

    pub fn field(&self) -> FieldSpec {
        self.ring.field
    }

    pub fn terms(&self) -> &[(Monomial, Scalar)] {
        &self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.degree() == 0)
    }

    pub fn leading_term(&self) -> Option<&(Monomial, Scalar)> {
        self.terms.first()
    }

    pub fn coefficient(&self, m: &Monomial) -> Scalar {
        self.terms.iter().find(|(t, _)| t == m).map(|(_, c)| c.clone()).unwrap_or_else(|| self.ring.field.zero())
    }

    pub fn constant_term(&self) -> Scalar {
        match self.terms.last() {
            Some((m, c)) if m.degree() == 0 => c.clone(),
            _ => self.ring.field.zero(),
        }
    }

    /// Largest total degree of a term (unweighted); `None` for zero.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.first().map(|(m, _)| m.degree())
    }

    /// `w * (sum of exponents)` when all terms agree.
    pub fn weighted_degree(&self) -> WeightedDegree {
        let Some((first, _)) = self.terms.first() else {
            return WeightedDegree::Zero;
        };
        let (last, _) = self.terms.last().unwrap();
        if first.degree() == last.degree() {
            WeightedDegree::Homogeneous(first.degree() * self.ring.weight)
        } else {
            WeightedDegree::Inhomogeneous
        }
    }

    /// Terms of the given total (unweighted) degree.
    pub fn homogeneous_part(&self, degree: u32) -> Polynomial {
        Polynomial {
            ring: self.ring,
            terms: self.terms.iter().filter(|(m, _)| m.degree() == degree).cloned().collect(),
        }
    }

    pub fn try_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.ring.ensure_same(&other.ring)?;
        Ok(self.add(other))
    }

    pub fn try_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.ring.ensure_same(&other.ring)?;
        Ok(self.sub(other))
    }

    pub fn try_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.ring.ensure_same(&other.ring)?;
        Ok(self.mul(other))
    }

    /// Sum; panics on ring mismatch (use [`Polynomial::try_add`] at trust
    /// boundaries).
    pub fn add(&self, other: &Polynomial) -> Polynomial {
        self.combine(other, false)
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.combine(other, true)
    }

    fn combine(&self, other: &Polynomial, negate: bool) -> Polynomial {
        assert_eq!(self.ring, other.ring, "ring mismatch");
        let mut terms = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let a = &self.terms;
        let b = &other.terms;
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Greater => {
                    terms.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let c = if negate { -&b[j].1 } else { b[j].1.clone() };
                    terms.push((b[j].0, c));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                    if !c.is_zero() {
                        terms.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        terms.extend(a[i..].iter().cloned());
        for (m, c) in &b[j..] {
            terms.push((*m, if negate { -c } else { c.clone() }));
        }
        Polynomial { ring: self.ring, terms }
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial { ring: self.ring, terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect() }
    }

    pub fn scale(&self, c: &Scalar) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.ring);
        }
        Polynomial { ring: self.ring, terms: self.terms.iter().map(|(m, a)| (*m, a * c)).collect() }
    }

    /// Multiplication by `c * m`; monomial multiplication preserves the term
    /// order, so no re-sorting is needed.
    pub fn mul_term(&self, m: &Monomial, c: &Scalar) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.ring);
        }
        let mut terms = Vec::with_capacity(self.terms.len());
        for (t, a) in &self.terms {
            let v = a * c;
            if !v.is_zero() {
                terms.push((t.mul(m), v));
            }
        }
        Polynomial { ring: self.ring, terms }
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        assert_eq!(self.ring, other.ring, "ring mismatch");
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero(self.ring);
        }
        if other.terms.len() == 1 {
            return self.mul_term(&other.terms[0].0, &other.terms[0].1);
        }
        if self.terms.len() == 1 {
            return other.mul_term(&self.terms[0].0, &self.terms[0].1);
        }
        let mut acc: HashMap<Monomial, Scalar> = HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb);
                let v = ca * cb;
                match acc.get_mut(&m) {
                    Some(slot) => *slot = &*slot + &v,
                    None => {
                        acc.insert(m, v);
                    }
                }
            }
        }
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by_key(|t| std::cmp::Reverse(t.0));
        Polynomial { ring: self.ring, terms }
    }

    pub fn pow(&self, exp: u32) -> Polynomial {
        let mut acc = Polynomial::one(self.ring);
        for _ in 0..exp {
            acc = acc.mul(self);
        }
        acc
    }

    /// Exact quotient `self / divisor`, or `None` if the division leaves a
    /// remainder (or the divisor is zero).
    pub fn div_exact(&self, divisor: &Polynomial) -> Option<Polynomial> {
        assert_eq!(self.ring, divisor.ring, "ring mismatch");
        let (lead_m, lead_c) = divisor.terms.first()?;
        if self.is_zero() {
            return Some(Polynomial::zero(self.ring));
        }
        let lead_inv = lead_c.inv()?;
        if divisor.terms.len() == 1 {
            let mut terms = Vec::with_capacity(self.terms.len());
            for (m, c) in &self.terms {
                if !lead_m.divides(m) {
                    return None;
                }
                terms.push((lead_m.quotient_of(m), c * &lead_inv));
            }
            return Some(Polynomial { ring: self.ring, terms });
        }
        let mut rem: BTreeMap<Monomial, Scalar> = self.terms.iter().cloned().collect();
        let mut quotient = Vec::new();
        while let Some((m, c)) = rem.pop_last() {
            if !lead_m.divides(&m) {
                return None;
            }
            let qm = lead_m.quotient_of(&m);
            let qc = &c * &lead_inv;
            for (dm, dc) in &divisor.terms[1..] {
                let key = dm.mul(&qm);
                let v = dc * &qc;
                match rem.get_mut(&key) {
                    Some(slot) => {
                        let nv = &*slot - &v;
                        if nv.is_zero() {
                            rem.remove(&key);
                        } else {
                            *slot = nv;
                        }
                    }
                    None => {
                        rem.insert(key, -v);
                    }
                }
            }
            quotient.push((qm, qc));
        }
        Some(Polynomial { ring: self.ring, terms: quotient })
    }

    /// Normal form in `R/(t_1^{a_1}, ..., t_r^{a_r})`: drops every term with
    /// some exponent `>= a_i`.
    pub fn reduce_mod_powers(&self, bounds: &[u32]) -> Polynomial {
        assert_eq!(bounds.len(), self.ring.num_vars, "exponent vector length");
        Polynomial { ring: self.ring, terms: self.terms.iter().filter(|(m, _)| m.below(bounds)).cloned().collect() }
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let abs = c.abs();
            let mono = m.display(self.ring.num_vars);
            if m.degree() == 0 {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{abs}*{mono}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(p: u64, r: usize) -> RingSpec {
        let field = if p == 0 { FieldSpec::rationals() } else { FieldSpec::prime(p) };
        RingSpec::new(field, r, 1).unwrap()
    }

    #[test]
    fn freshmans_dream_in_char_two() {
        let r = ring(2, 2);
        let s = Polynomial::var(r, 0).add(&Polynomial::var(r, 1));
        let sq = s.mul(&s);
        assert_eq!(sq.to_string(), "t1^2 + t2^2");
    }

    #[test]
    fn additive_identity_and_monomial_product() {
        let r = ring(0, 3);
        let p = Polynomial::var(r, 0).mul(&Polynomial::var(r, 2));
        assert_eq!(p.add(&Polynomial::zero(r)), p);
        let q = Polynomial::var(r, 0).mul(&Polynomial::var(r, 1));
        assert_eq!(p.mul(&q).to_string(), "t1^2*t2*t3");
    }

    #[test]
    fn ring_mismatch_is_an_error() {
        let a = Polynomial::one(ring(0, 2));
        let b = Polynomial::one(ring(2, 2));
        assert!(a.try_add(&b).is_err());
        assert!(a.try_mul(&Polynomial::one(ring(0, 3))).is_err());
    }

    #[test]
    fn weighted_degrees() {
        let r1 = ring(0, 3);
        let p = Polynomial::var_power(r1, 0, 2).mul(&Polynomial::var(r1, 2));
        assert_eq!(p.weighted_degree(), WeightedDegree::Homogeneous(3));
        let r2 = RingSpec::new(FieldSpec::rationals(), 3, 2).unwrap();
        assert_eq!(Polynomial::var(r2, 0).weighted_degree(), WeightedDegree::Homogeneous(2));
        let inh = Polynomial::var(r1, 0).add(&Polynomial::var_power(r1, 1, 2));
        assert_eq!(inh.weighted_degree(), WeightedDegree::Inhomogeneous);
        assert_eq!(Polynomial::zero(r1).weighted_degree(), WeightedDegree::Zero);
    }

    #[test]
    fn reduction_mod_powers() {
        let r = ring(0, 2);
        let t1 = Polynomial::var(r, 0);
        let t2 = Polynomial::var(r, 1);
        assert!(t1.pow(2).reduce_mod_powers(&[2, 2]).is_zero());
        let p = t1.mul(&t2).add(&t1.pow(3));
        assert_eq!(p.reduce_mod_powers(&[2, 2]), t1.mul(&t2));
        let r3 = ring(0, 3);
        let top = Polynomial::var(r3, 0).mul(&Polynomial::var(r3, 1)).mul(&Polynomial::var(r3, 2));
        assert_eq!(top.reduce_mod_powers(&[2, 2, 2]), top);
    }

    #[test]
    fn exact_division() {
        let r = ring(0, 2);
        let t1 = Polynomial::var(r, 0);
        let t2 = Polynomial::var(r, 1);
        let a = t1.sub(&t2);
        let b = t1.add(&t2).add(&Polynomial::one(r));
        let prod = a.mul(&b);
        assert_eq!(prod.div_exact(&a), Some(b.clone()));
        assert_eq!(prod.div_exact(&b), Some(a));
        assert_eq!(t1.div_exact(&t2), None);
    }

    #[test]
    fn display_signs_and_order() {
        let r = ring(0, 3);
        let p = Polynomial::var(r, 1)
            .scale(&r.field.from_i64(2))
            .add(&Polynomial::var_power(r, 0, 2).mul(&Polynomial::var(r, 2)))
            .sub(&Polynomial::one(r));
        assert_eq!(p.to_string(), "t1^2*t3 + 2*t2 - 1");
    }

    #[test]
    fn monomial_enumeration() {
        let ms = Monomial::all_of_degree(2, 2);
        let shown: Vec<_> = ms.iter().map(|m| m.display(2)).collect();
        assert_eq!(shown, ["t1^2", "t1*t2", "t2^2"]);
        assert_eq!(Monomial::all_below(&[2, 3]).len(), 6);
    }
}
