//! Finite fields `F_{p^e}` with `p^e >= 2^61`, used as large evaluation
//! domains when the base field is small.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::scalar::{mul_mod, pow_mod};

/// Minimal size of an evaluation domain, as a power of two.
pub const DOMAIN_BITS: u32 = 61;

/// Field operations needed by the evaluation-based rank routine.
pub trait EvalField {
    type Elem: Clone;
    fn zero(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn embed(&self, v: u64) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem;
}

/// Smallest `e` with `p^e >= 2^61`.
pub fn extension_degree(p: u64) -> u32 {
    let target = 1u128 << DOMAIN_BITS;
    let mut size = 1u128;
    let mut e = 0;
    while size < target {
        size = size.saturating_mul(p as u128);
        e += 1;
    }
    e
}

// ---- dense polynomials over F_p, coefficients low to high, trimmed ----

fn trim(a: &mut Vec<u64>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

fn poly_sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let n = a.len().max(b.len());
    let mut out = vec![0; n];
    for (i, slot) in out.iter_mut().enumerate() {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        *slot = if x >= y { x - y } else { x + p - y };
    }
    trim(&mut out);
    out
}

fn poly_mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + mul_mod(x, y, p)) % p;
        }
    }
    trim(&mut out);
    out
}

/// Remainder of `a` modulo a nonzero `m`.
fn poly_rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    trim(&mut r);
    let dm = m.len() - 1;
    let lead_inv = pow_mod(m[dm], p - 2, p);
    while r.len() > dm {
        let shift = r.len() - 1 - dm;
        let f = mul_mod(*r.last().unwrap(), lead_inv, p);
        for (i, &c) in m.iter().enumerate() {
            let v = mul_mod(f, c, p);
            let slot = &mut r[shift + i];
            *slot = if *slot >= v { *slot - v } else { *slot + p - v };
        }
        trim(&mut r);
    }
    r
}

fn poly_divrem(a: &[u64], m: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
    let mut r = a.to_vec();
    trim(&mut r);
    let dm = m.len() - 1;
    let lead_inv = pow_mod(m[dm], p - 2, p);
    let mut q = vec![0u64; r.len().saturating_sub(dm).max(1)];
    while r.len() > dm {
        let shift = r.len() - 1 - dm;
        let f = mul_mod(*r.last().unwrap(), lead_inv, p);
        q[shift] = f;
        for (i, &c) in m.iter().enumerate() {
            let v = mul_mod(f, c, p);
            let slot = &mut r[shift + i];
            *slot = if *slot >= v { *slot - v } else { *slot + p - v };
        }
        trim(&mut r);
    }
    trim(&mut q);
    (q, r)
}

fn poly_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let r = poly_rem(&x, &y, p);
        x = y;
        y = r;
    }
    x
}

fn poly_powmod(base: &[u64], mut exp: u64, m: &[u64], p: u64) -> Vec<u64> {
    let mut acc = vec![1u64];
    let mut b = poly_rem(base, m, p);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = poly_rem(&poly_mul(&acc, &b, p), m, p);
        }
        b = poly_rem(&poly_mul(&b, &b, p), m, p);
        exp >>= 1;
    }
    acc
}

/// Ben-Or irreducibility test for a monic `f` of degree `e`.
fn is_irreducible(f: &[u64], p: u64) -> bool {
    let e = f.len() - 1;
    let x = vec![0u64, 1];
    let mut h = x.clone();
    for _ in 0..e / 2 {
        h = poly_powmod(&h, p, f, p);
        let g = poly_gcd(&poly_sub(&h, &x, p), f, p);
        if g.len() > 1 {
            return false;
        }
    }
    true
}

/// A deterministic monic irreducible polynomial of degree `e` over `F_p`.
fn find_irreducible(p: u64, e: u32) -> Vec<u64> {
    let mut rng = ChaCha8Rng::seed_from_u64(p ^ ((e as u64) << 32));
    loop {
        let mut f: Vec<u64> = (0..e).map(|_| rng.gen_range(0..p)).collect();
        if f[0] == 0 {
            continue;
        }
        f.push(1);
        if is_irreducible(&f, p) {
            return f;
        }
    }
}

/// `F_{p^e}` as `F_p[x]/(f)`, elements stored as coefficient vectors of
/// length `e` (low to high).
#[derive(Clone, Debug)]
pub struct PrimeExtension {
    p: u64,
    e: usize,
    modulus: Vec<u64>,
}

impl PrimeExtension {
    pub fn new(p: u64) -> Self {
        let e = extension_degree(p);
        Self { p, e: e as usize, modulus: find_irreducible(p, e) }
    }

    #[cfg(test)]
    pub fn degree(&self) -> usize {
        self.e
    }

    fn pad(&self, mut v: Vec<u64>) -> Vec<u64> {
        v.resize(self.e, 0);
        v
    }
}

impl EvalField for PrimeExtension {
    type Elem = Vec<u64>;

    fn zero(&self) -> Vec<u64> {
        vec![0; self.e]
    }

    fn is_zero(&self, a: &Vec<u64>) -> bool {
        a.iter().all(|&x| x == 0)
    }

    fn embed(&self, v: u64) -> Vec<u64> {
        let mut out = self.zero();
        out[0] = v % self.p;
        out
    }

    fn add(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        a.iter().zip(b).map(|(&x, &y)| (x + y) % self.p).collect()
    }

    fn sub(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        a.iter().zip(b).map(|(&x, &y)| if x >= y { x - y } else { x + self.p - y }).collect()
    }

    fn mul(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        self.pad(poly_rem(&poly_mul(a, b, self.p), &self.modulus, self.p))
    }

    fn inv(&self, a: &Vec<u64>) -> Vec<u64> {
        // extended Euclid on (a, f)
        let p = self.p;
        let (mut r0, mut r1) = (self.modulus.clone(), {
            let mut v = a.clone();
            trim(&mut v);
            v
        });
        let (mut s0, mut s1): (Vec<u64>, Vec<u64>) = (Vec::new(), vec![1]);
        while !r1.is_empty() {
            let (q, r) = poly_divrem(&r0, &r1, p);
            let s = poly_sub(&s0, &poly_mul(&q, &s1, p), p);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
        }
        assert_eq!(r0.len(), 1, "inverse of zero in extension field");
        let c = pow_mod(r0[0], p - 2, p);
        self.pad(s0.iter().map(|&x| mul_mod(x, c, p)).collect())
    }

    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Vec<u64> {
        (0..self.e).map(|_| rng.gen_range(0..self.p)).collect()
    }
}

/// `F_{2^61}` with elements packed into the low 61 bits of a `u64`.
#[derive(Clone, Debug)]
pub struct BinaryExtension {
    /// Reduction polynomial without its leading `x^61` term.
    low: u64,
}

impl BinaryExtension {
    pub fn new() -> Self {
        let f = find_irreducible(2, DOMAIN_BITS);
        let low = f[..DOMAIN_BITS as usize].iter().enumerate().fold(0u64, |acc, (i, &c)| acc | (c << i));
        Self { low }
    }
}

impl Default for BinaryExtension {
    fn default() -> Self {
        Self::new()
    }
}

const TOP: u64 = 1 << DOMAIN_BITS;

impl EvalField for BinaryExtension {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }

    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }

    fn embed(&self, v: u64) -> u64 {
        v & 1
    }

    fn add(&self, a: &u64, b: &u64) -> u64 {
        a ^ b
    }

    fn sub(&self, a: &u64, b: &u64) -> u64 {
        a ^ b
    }

    fn mul(&self, a: &u64, b: &u64) -> u64 {
        let mut x = *a;
        let mut y = *b;
        let mut acc = 0u64;
        while y != 0 {
            if y & 1 == 1 {
                acc ^= x;
            }
            y >>= 1;
            x <<= 1;
            if x & TOP != 0 {
                x ^= TOP | self.low;
            }
        }
        acc
    }

    fn inv(&self, a: &u64) -> u64 {
        assert!(*a != 0, "inverse of zero in extension field");
        // a^(2^61 - 2)
        let mut result = 1u64;
        let mut base = *a;
        let mut exp = TOP - 2;
        while exp > 0 {
            if exp & 1 == 1 {
                result = self.mul(&result, &base);
            }
            base = self.mul(&base, &base);
            exp >>= 1;
        }
        result
    }

    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> u64 {
        rng.gen::<u64>() & (TOP - 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degrees() {
        assert_eq!(extension_degree(2), 61);
        assert_eq!(extension_degree(3), 39);
        assert_eq!(extension_degree((1 << 31) - 1), 2);
    }

    #[test]
    fn binary_field_inverse() {
        let f = BinaryExtension::new();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..20 {
            let a = f.random(&mut rng);
            if a == 0 {
                continue;
            }
            assert_eq!(f.mul(&a, &f.inv(&a)), 1);
        }
    }

    #[test]
    fn prime_extension_inverse() {
        let f = PrimeExtension::new(3);
        assert_eq!(f.degree(), 39);
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..10 {
            let a = f.random(&mut rng);
            if f.is_zero(&a) {
                continue;
            }
            assert_eq!(f.mul(&a, &f.inv(&a)), f.embed(1));
        }
    }

    #[test]
    fn irreducibility_small_cases() {
        // x^2 + 1 is reducible over F_2, x^2 + x + 1 is not
        assert!(!is_irreducible(&[1, 0, 1], 2));
        assert!(is_irreducible(&[1, 1, 1], 2));
        // x^2 + 1 is irreducible over F_3
        assert!(is_irreducible(&[1, 0, 1], 3));
    }
}
