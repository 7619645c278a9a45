//! Plain-text map files.
//!
//! ```text
//! koszul-map v1
//! source = k3m1.cx
//! target = k3m0.cx
//! [map]
//! f s1 = s123 + t1*s1
//! ```
//!
//! Paths are relative to the map file. Columns not listed are zero.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use crate::complex::format::{content_lines, key_value, parse_complex, ComplexFile};
use crate::complex::FreeComplex;
use crate::error::{Error, Result};
use crate::ring::{format_combination, parse_combination, PolyMatrix};

pub const MAP_HEADER: &str = "koszul-map v1";

/// A parsed map file: the referenced paths and the matrix (target x source).
#[derive(Clone, Debug)]
pub struct MapFile {
    pub source_path: String,
    pub target_path: String,
    pub matrix: PolyMatrix,
}

fn err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

/// Reads the header paths of a map file without parsing its body.
pub fn map_paths(text: &str) -> Result<(String, String)> {
    let mut source = None;
    let mut target = None;
    let mut lines = content_lines(text);
    match lines.next() {
        Some((_, MAP_HEADER)) => {}
        Some((n, l)) => return Err(err(n, format!("expected header '{MAP_HEADER}', got '{l}'"))),
        None => return Err(err(0, "empty file")),
    }
    for (n, l) in lines {
        if l == "[map]" {
            break;
        }
        match key_value(n, l)? {
            ("source", v) => source = Some(v.to_string()),
            ("target", v) => target = Some(v.to_string()),
            (k, _) => return Err(err(n, format!("unknown key '{k}'"))),
        }
    }
    Ok((source.ok_or_else(|| err(0, "missing 'source'"))?, target.ok_or_else(|| err(0, "missing 'target'"))?))
}

/// Parses a map file against already loaded source and target complexes.
pub fn parse_map(text: &str, source: &FreeComplex, target: &FreeComplex) -> Result<MapFile> {
    let (source_path, target_path) = map_paths(text)?;
    let ring = source.ring();
    ring.ensure_same(&target.ring())?;
    let names = target.names();
    let lookup = |s: &str| names.iter().position(|x| x == s);
    let mut matrix = PolyMatrix::zeros(ring, target.len(), source.len());
    let mut defined = vec![false; source.len()];
    let mut in_body = false;
    for (n, l) in content_lines(text).skip(1) {
        if l == "[map]" {
            in_body = true;
            continue;
        }
        if !in_body {
            continue;
        }
        let (k, v) = key_value(n, l)?;
        let name = k.strip_prefix("f ").map(str::trim).ok_or_else(|| err(n, "expected 'f <name> = ...'"))?;
        let j = source.index_of(name).ok_or_else(|| err(n, format!("unknown source generator '{name}'")))?;
        if std::mem::replace(&mut defined[j], true) {
            return Err(err(n, format!("f {name} given twice")));
        }
        let x = parse_combination(ring, v, target.len(), lookup).map_err(|m| err(n, m))?;
        for (i, p) in x.into_iter().enumerate() {
            matrix.set(i, j, p);
        }
    }
    if !in_body {
        return Err(err(0, "missing [map] section"));
    }
    Ok(MapFile { source_path, target_path, matrix })
}

pub fn write_map(
    source_path: &str,
    target_path: &str,
    source: &FreeComplex,
    target: &FreeComplex,
    matrix: &PolyMatrix,
) -> String {
    let names = target.names();
    let mut out = String::new();
    let _ = writeln!(out, "{MAP_HEADER}");
    let _ = writeln!(out, "source = {source_path}");
    let _ = writeln!(out, "target = {target_path}");
    let _ = writeln!(out, "[map]");
    for j in 0..source.len() {
        let col = matrix.column_element(j);
        if col.iter().any(|p| !p.is_zero()) {
            let _ = writeln!(out, "f {} = {}", source.name(j), format_combination(&col, &names));
        }
    }
    out
}

fn resolve(base: &Path, rel: &str) -> PathBuf {
    base.parent().map_or_else(|| PathBuf::from(rel), |d| d.join(rel))
}

pub fn read_complex_file(path: &Path) -> Result<ComplexFile> {
    parse_complex(&std::fs::read_to_string(path)?)
}

/// Loads a map file and the two complexes it refers to.
pub fn read_map_file(path: &Path) -> Result<(ComplexFile, ComplexFile, MapFile)> {
    let text = std::fs::read_to_string(path)?;
    let (s, t) = map_paths(&text)?;
    let source = read_complex_file(&resolve(path, &s))?;
    let target = read_complex_file(&resolve(path, &t))?;
    let map = parse_map(&text, &source.complex, &target.complex)?;
    Ok((source, target, map))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chainmap::standard_iota;
    use crate::ring::{FieldSpec, RingSpec};

    #[test]
    fn iota_round_trips() {
        let ring = RingSpec::new(FieldSpec::rationals(), 2, 1).unwrap();
        let iota = standard_iota(ring, 2);
        let text = write_map("a.cx", "b.cx", iota.source(), iota.target(), iota.matrix());
        assert!(text.contains("f s12 = t1^2*t2^2*s12"), "{text}");
        let parsed = parse_map(&text, iota.source(), iota.target()).unwrap();
        assert_eq!(parsed.source_path, "a.cx");
        assert_eq!(&parsed.matrix, iota.matrix());
    }

    #[test]
    fn rejects_unknown_generators() {
        let ring = RingSpec::new(FieldSpec::prime(2), 1, 1).unwrap();
        let iota = standard_iota(ring, 1);
        let text = "koszul-map v1\nsource = a\ntarget = b\n[map]\nf s1 = t1*s7\n";
        assert!(matches!(parse_map(text, iota.source(), iota.target()), Err(Error::Parse { line: 5, .. })));
    }
}
