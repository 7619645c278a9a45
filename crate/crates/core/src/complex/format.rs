//! Plain-text complex files.
//!
//! ```text
//! koszul-complex v1
//! [ring]
//! char = 2
//! r = 3
//! weight = 1
//! [generators]
//! s 0
//! s1 1
//! [differential]
//! d s1 = t1^2*s
//! [augmentation]
//! augment s = 1
//! [products]
//! unit = s
//! parity s1 = 1
//! mul s1 * s2 = s12
//! ```
//!
//! `#` starts a comment. Missing differential entries and products are zero;
//! the last two sections are optional.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use super::{Augmentation, FreeComplex, Generator, ProductTable};
use crate::error::{Error, Result};
use crate::ring::{format_combination, parse_combination, parse_polynomial, FieldSpec, PolyMatrix, RingSpec, Scalar};

pub const COMPLEX_HEADER: &str = "koszul-complex v1";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexFile {
    pub complex: FreeComplex,
    pub augmentation: Option<Augmentation>,
    pub products: Option<ProductTable>,
}

impl ComplexFile {
    pub fn new(complex: FreeComplex) -> Self {
        Self { complex, augmentation: None, products: None }
    }
}

fn err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

/// Non-empty lines with comments stripped, numbered from 1.
pub(crate) fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.split('#').next().unwrap_or("").trim();
        (!l.is_empty()).then_some((i + 1, l))
    })
}

pub(crate) fn key_value(line: usize, l: &str) -> Result<(&str, &str)> {
    let (k, v) = l.split_once('=').ok_or_else(|| err(line, format!("expected 'key = value', got '{l}'")))?;
    Ok((k.trim(), v.trim()))
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Section {
    Ring,
    Generators,
    Differential,
    Augmentation,
    Products,
}

fn parse_scalar(ring: RingSpec, line: usize, text: &str) -> Result<Scalar> {
    let p = parse_polynomial(ring, text).map_err(|m| err(line, m))?;
    if !p.is_constant() {
        return Err(err(line, format!("'{text}' is not a constant")));
    }
    Ok(p.constant_term())
}

pub fn parse_complex(text: &str) -> Result<ComplexFile> {
    let mut lines = content_lines(text);
    match lines.next() {
        Some((_, COMPLEX_HEADER)) => {}
        Some((n, l)) => return Err(err(n, format!("expected header '{COMPLEX_HEADER}', got '{l}'"))),
        None => return Err(err(0, "empty file")),
    }
    let mut section = None;
    let mut ring_keys: BTreeMap<&str, (usize, &str)> = BTreeMap::new();
    let mut gens: Vec<Generator> = Vec::new();
    let mut diff: Vec<(usize, &str, &str)> = Vec::new();
    let mut aug: Vec<(usize, &str, &str)> = Vec::new();
    let mut unit: Option<(usize, &str)> = None;
    let mut parity: Vec<(usize, &str, &str)> = Vec::new();
    let mut muls: Vec<(usize, &str, &str, &str)> = Vec::new();
    let mut seen_sections = Vec::new();
    for (n, l) in lines {
        if let Some(name) = l.strip_prefix('[').and_then(|s| s.strip_suffix(']')) {
            let s = match name.trim() {
                "ring" => Section::Ring,
                "generators" => Section::Generators,
                "differential" => Section::Differential,
                "augmentation" => Section::Augmentation,
                "products" => Section::Products,
                other => return Err(err(n, format!("unknown section [{other}]"))),
            };
            if seen_sections.contains(&s) {
                return Err(err(n, format!("duplicate section [{}]", name.trim())));
            }
            seen_sections.push(s);
            section = Some(s);
            continue;
        }
        match section {
            None => return Err(err(n, "content before the first section")),
            Some(Section::Ring) => {
                let (k, v) = key_value(n, l)?;
                if ring_keys.insert(k, (n, v)).is_some() {
                    return Err(err(n, format!("duplicate key '{k}'")));
                }
            }
            Some(Section::Generators) => {
                let mut parts = l.split_whitespace();
                let (Some(name), Some(deg), None) = (parts.next(), parts.next(), parts.next()) else {
                    return Err(err(n, format!("expected '<name> <degree>', got '{l}'")));
                };
                let degree = deg.parse::<i64>().map_err(|_| err(n, format!("invalid degree '{deg}'")))?;
                gens.push(Generator::new(name, degree));
            }
            Some(Section::Differential) => {
                let (k, v) = key_value(n, l)?;
                let name = k.strip_prefix("d ").map(str::trim).ok_or_else(|| err(n, "expected 'd <name> = ...'"))?;
                diff.push((n, name, v));
            }
            Some(Section::Augmentation) => {
                let (k, v) = key_value(n, l)?;
                let name = k
                    .strip_prefix("augment ")
                    .map(str::trim)
                    .ok_or_else(|| err(n, "expected 'augment <name> = ...'"))?;
                aug.push((n, name, v));
            }
            Some(Section::Products) => {
                let (k, v) = key_value(n, l)?;
                if k == "unit" {
                    unit = Some((n, v));
                } else if let Some(name) = k.strip_prefix("parity ") {
                    parity.push((n, name.trim(), v));
                } else if let Some(pair) = k.strip_prefix("mul ") {
                    let (a, b) = pair.split_once('*').ok_or_else(|| err(n, "expected 'mul <a> * <b> = ...'"))?;
                    muls.push((n, a.trim(), b.trim(), v));
                } else {
                    return Err(err(n, format!("unknown products entry '{k}'")));
                }
            }
        }
    }
    let get = |k: &str| ring_keys.get(k).copied().ok_or_else(|| err(0, format!("[ring] is missing '{k}'")));
    let number = |k: &str| -> Result<u64> {
        let (n, v) = get(k)?;
        v.parse::<u64>().map_err(|_| err(n, format!("invalid value '{v}' for '{k}'")))
    };
    let char_line = get("char")?.0;
    let field = FieldSpec::new(number("char")?).map_err(|e| err(char_line, e.to_string()))?;
    let r = number("r")? as usize;
    let w = number("weight")? as u32;
    if let Some((k, (n, _))) = ring_keys.iter().find(|(k, _)| !["char", "r", "weight"].contains(k)) {
        return Err(err(*n, format!("unknown ring key '{k}'")));
    }
    let r_line = get("r")?.0;
    let ring = RingSpec::new(field, r, w).map_err(|e| err(r_line, e.to_string()))?;
    let names: Vec<String> = gens.iter().map(|g| g.name.clone()).collect();
    let lookup = |s: &str| names.iter().position(|x| x == s);
    let len = gens.len();
    let find = |n: usize, name: &str| lookup(name).ok_or_else(|| err(n, format!("unknown generator '{name}'")));
    let mut d = PolyMatrix::zeros(ring, len, len);
    let mut defined = vec![false; len];
    for (n, name, v) in diff {
        let j = find(n, name)?;
        if std::mem::replace(&mut defined[j], true) {
            return Err(err(n, format!("d {name} given twice")));
        }
        let x = parse_combination(ring, v, len, lookup).map_err(|m| err(n, m))?;
        for (i, p) in x.into_iter().enumerate() {
            d.set(i, j, p);
        }
    }
    let complex = FreeComplex::new(ring, gens, d)?;
    let augmentation = if seen_sections.contains(&Section::Augmentation) {
        let mut values = vec![field.zero(); len];
        for (n, name, v) in aug {
            values[find(n, name)?] = parse_scalar(ring, n, v)?;
        }
        Some(Augmentation::new(field, values))
    } else {
        None
    };
    let products = if seen_sections.contains(&Section::Products) {
        let (n, u) = unit.ok_or_else(|| err(0, "[products] is missing 'unit'"))?;
        let unit = find(n, u)?;
        let mut par = vec![false; len];
        for (n, name, v) in parity {
            par[find(n, name)?] = match v {
                "0" => false,
                "1" => true,
                _ => return Err(err(n, format!("parity must be 0 or 1, got '{v}'"))),
            };
        }
        let mut table = BTreeMap::new();
        for (n, a, b, v) in muls {
            let key = (find(n, a)?, find(n, b)?);
            let x = parse_combination(ring, v, len, lookup).map_err(|m| err(n, m))?;
            if table.insert(key, x).is_some() {
                return Err(err(n, format!("product {a} * {b} given twice")));
            }
        }
        Some(ProductTable::new(unit, par, table))
    } else {
        None
    };
    Ok(ComplexFile { complex, augmentation, products })
}

pub fn write_complex(file: &ComplexFile) -> String {
    let c = &file.complex;
    let ring = c.ring();
    let names = c.names();
    let mut out = String::new();
    let _ = writeln!(out, "{COMPLEX_HEADER}");
    let _ = writeln!(out, "[ring]");
    let _ = writeln!(out, "char = {}", ring.field.characteristic());
    let _ = writeln!(out, "r = {}", ring.num_vars);
    let _ = writeln!(out, "weight = {}", ring.weight);
    let _ = writeln!(out, "[generators]");
    for g in c.generators() {
        let _ = writeln!(out, "{} {}", g.name, g.degree);
    }
    let _ = writeln!(out, "[differential]");
    for j in 0..c.len() {
        let col = c.differential().column_element(j);
        if col.iter().any(|p| !p.is_zero()) {
            let _ = writeln!(out, "d {} = {}", names[j], format_combination(&col, &names));
        }
    }
    if let Some(a) = &file.augmentation {
        let _ = writeln!(out, "[augmentation]");
        for (i, v) in a.values().iter().enumerate() {
            if !v.is_zero() {
                let _ = writeln!(out, "augment {} = {}", names[i], v);
            }
        }
    }
    if let Some(p) = &file.products {
        let _ = writeln!(out, "[products]");
        let _ = writeln!(out, "unit = {}", names[p.unit()]);
        for (i, &odd) in p.parities().iter().enumerate() {
            if odd {
                let _ = writeln!(out, "parity {} = 1", names[i]);
            }
        }
        for (&(a, b), v) in p.entries() {
            let _ = writeln!(out, "mul {} * {} = {}", names[a], names[b], format_combination(v, &names));
        }
    }
    out
}
