//! Text grammar for polynomials and polynomial combinations of generators.
//!
//! ```text
//! poly    := term (('+' | '-') term)*
//! term    := factor ('*' factor)*
//! factor  := integer ['/' integer] | 't' index ['^' exponent] | generator
//! ```
//!
//! Whitespace is insignificant. A leading `-` (or `-` in place of `+`) negates
//! the term. Generators may only appear in combinations, exactly once per term.

use num_bigint::BigInt;

use super::matrix::{zero_element, Element};
use super::poly::{Monomial, Polynomial, RingSpec};
use super::scalar::Scalar;

fn split_terms(text: &str) -> Result<Vec<(bool, String)>, String> {
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err("empty expression".into());
    }
    let mut out = Vec::new();
    let mut negative = false;
    let mut current = String::new();
    let mut expecting_term = true;
    for ch in compact.chars() {
        match ch {
            '+' | '-' if expecting_term => {
                if ch == '-' {
                    negative = !negative;
                }
            }
            '+' | '-' => {
                if current.ends_with('*') || current.ends_with('^') || current.ends_with('/') {
                    return Err(format!("unexpected '{ch}' after operator"));
                }
                out.push((negative, std::mem::take(&mut current)));
                negative = ch == '-';
                expecting_term = true;
            }
            _ => {
                current.push(ch);
                expecting_term = false;
            }
        }
    }
    if expecting_term {
        return Err("expression ends with a sign".into());
    }
    out.push((negative, current));
    Ok(out)
}

enum Factor {
    Number(BigInt, BigInt),
    Var(usize, u32),
    Name(String),
}

fn parse_factor(s: &str, num_vars: usize) -> Result<Factor, String> {
    if s.is_empty() {
        return Err("empty factor".into());
    }
    if s.chars().next().unwrap().is_ascii_digit() {
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (n, d),
            None => (s, "1"),
        };
        let n: BigInt = num.parse().map_err(|_| format!("bad integer '{num}'"))?;
        let d: BigInt = den.parse().map_err(|_| format!("bad denominator '{den}'"))?;
        return Ok(Factor::Number(n, d));
    }
    if let Some(rest) = s.strip_prefix('t') {
        let (idx, exp) = match rest.split_once('^') {
            Some((i, e)) => (i, Some(e)),
            None => (rest, None),
        };
        if !idx.is_empty() && idx.chars().all(|c| c.is_ascii_digit()) {
            let i: usize = idx.parse().map_err(|_| format!("bad variable '{s}'"))?;
            if i == 0 || i > num_vars {
                return Err(format!("variable t{i} out of range 1..={num_vars}"));
            }
            let e: u32 = match exp {
                Some(e) => e.parse().map_err(|_| format!("bad exponent in '{s}'"))?,
                None => 1,
            };
            return Ok(Factor::Var(i - 1, e));
        }
    }
    if s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
        return Ok(Factor::Name(s.to_string()));
    }
    Err(format!("unrecognized factor '{s}'"))
}

/// Parses one term into (coefficient, monomial, optional generator name).
fn parse_term(ring: RingSpec, negative: bool, text: &str) -> Result<(Scalar, Monomial, Option<String>), String> {
    let mut coeff = ring.field.one();
    let mut exps = vec![0u32; ring.num_vars];
    let mut name = None;
    for f in text.split('*') {
        match parse_factor(f, ring.num_vars)? {
            Factor::Number(n, d) => {
                let c =
                    ring.field.fraction(&n, &d).ok_or_else(|| format!("denominator {d} vanishes in {}", ring.field))?;
                coeff = &coeff * &c;
            }
            Factor::Var(i, e) => exps[i] += e,
            Factor::Name(n) => {
                if name.replace(n).is_some() {
                    return Err(format!("term '{text}' names more than one generator"));
                }
            }
        }
    }
    if negative {
        coeff = -coeff;
    }
    Ok((coeff, Monomial::new(&exps), name))
}

pub fn parse_polynomial(ring: RingSpec, text: &str) -> Result<Polynomial, String> {
    let mut terms = Vec::new();
    for (neg, t) in split_terms(text)? {
        let (c, m, name) = parse_term(ring, neg, &t)?;
        if let Some(n) = name {
            return Err(format!("unexpected name '{n}' in polynomial"));
        }
        terms.push((m, c));
    }
    Ok(Polynomial::from_terms(ring, terms))
}

/// Parses `sum_j p_j * g_j` into a coordinate vector of length `len`, where
/// `lookup` resolves generator names to indices. The literal `0` is the zero
/// element.
pub fn parse_combination<F>(ring: RingSpec, text: &str, len: usize, lookup: F) -> Result<Element, String>
where
    F: Fn(&str) -> Option<usize>,
{
    let mut out = zero_element(ring, len);
    for (neg, t) in split_terms(text)? {
        let (c, m, name) = parse_term(ring, neg, &t)?;
        match name {
            Some(n) => {
                let idx = lookup(&n).ok_or_else(|| format!("unknown generator '{n}'"))?;
                out[idx] = out[idx].add(&Polynomial::term(ring, m, c));
            }
            None if c.is_zero() => {}
            None => return Err(format!("term '{t}' has no generator")),
        }
    }
    Ok(out)
}

/// Canonical text for a combination; inverse of [`parse_combination`].
pub fn format_combination(x: &[Polynomial], names: &[String]) -> String {
    let mut parts: Vec<(bool, String)> = Vec::new();
    for (p, name) in x.iter().zip(names) {
        for (m, c) in p.terms() {
            let neg = c.is_negative();
            let abs = c.abs();
            let mono = if m.degree() == 0 { String::new() } else { format!("{}*", m.display(p.ring().num_vars)) };
            let coeff = if abs.is_one() { String::new() } else { format!("{abs}*") };
            parts.push((neg, format!("{coeff}{mono}{name}")));
        }
    }
    if parts.is_empty() {
        return "0".into();
    }
    let mut s = String::new();
    for (k, (neg, body)) in parts.into_iter().enumerate() {
        if k == 0 {
            if neg {
                s.push('-');
            }
        } else {
            s.push_str(if neg { " - " } else { " + " });
        }
        s.push_str(&body);
    }
    s
}
