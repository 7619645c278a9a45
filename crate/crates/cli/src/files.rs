//! Commands that read and write complex and map files.

use std::path::Path;

use koszul_core::chainmap::format::read_complex_file;
use koszul_core::chainmap::{is_chain_map, rank_of_map, read_map_file, write_map, ChainMap, RankMode};
use koszul_core::complex::format::{write_complex, ComplexFile};
use koszul_core::complex::{koszul, min_generators_of_homology, Augmentation, FreeComplex, KoszulComplex};
use koszul_core::filtration::{bound_checks, check_properties, compute_filtration};
use koszul_core::lift::{case0_improved_bound, verify_cor43};
use koszul_core::minimal::{is_minimal, lambda_ops, minimal_model};
use koszul_core::ring::RingSpec;

use crate::report::Report;
use crate::{CliError, CliResult};

fn describe(rep: &mut Report, file: &Path, c: &FreeComplex) {
    rep.value("file", file.display());
    rep.value("ring", c.ring());
    rep.value("generators", c.len());
}

fn require_augmentation(cf: &ComplexFile) -> CliResult<&Augmentation> {
    cf.augmentation.as_ref().ok_or_else(|| CliError::Usage("the complex file has no [augmentation] section".into()))
}

fn write(dir: &Path, name: &str, text: &str) -> CliResult<()> {
    std::fs::create_dir_all(dir)?;
    std::fs::write(dir.join(name), text)?;
    Ok(())
}

fn with_structure(k: &KoszulComplex) -> ComplexFile {
    ComplexFile {
        complex: k.complex().clone(),
        augmentation: Some(k.augmentation()),
        products: Some(k.products().clone()),
    }
}

fn map_text(source_path: &str, target_path: &str, f: &ChainMap) -> String {
    write_map(source_path, target_path, f.source(), f.target(), f.matrix())
}

/// The factorization through the minimal model, every bound it implies, the
/// improved bound in the characteristic-zero even-grading case, and the
/// generator count of `H(C ⊗ R/(t^{m+1}))`.
pub fn verify_bounds(file: &Path, m: Option<u32>) -> CliResult<Report> {
    let cf = read_complex_file(file)?;
    let aug = require_augmentation(&cf)?;
    let c = &cf.complex;
    let mut rep = Report::new("verify-bounds");
    describe(&mut rep, file, c);

    let cor = verify_cor43(c, aug, m)?;
    rep.check("alpha is a chain map", is_chain_map(&cor.alpha).is_ok());
    rep.check("beta is a chain map", is_chain_map(&cor.beta).is_ok());
    rep.block(&cor.to_string());
    rep.check("factorization bounds", cor.all_pass());

    let ring = c.ring();
    if ring.weight == 2 && ring.field.characteristic() == 0 && ring.num_vars >= 3 {
        let case0 = case0_improved_bound(c, aug, Some(cor.m), true)?;
        rep.block(&case0.to_string().lines().map(|l| format!("case0.{l}")).collect::<Vec<_>>().join("\n"));
        rep.check("improved bound dim_h >= 2(r+1)", case0.all_pass());
    } else {
        rep.note("improved bound skipped: needs deg t_i = 2, characteristic 0 and r >= 3");
    }

    let a = vec![cor.m + 1; ring.num_vars];
    let gens = min_generators_of_homology(c, &a)?;
    let need = 1usize << ring.num_vars;
    rep.value("quotient_exponent", cor.m + 1);
    rep.value("min_generators", gens);
    rep.check(&format!("min_generators >= 2^r = {need}"), gens >= need);
    Ok(rep)
}

/// Writes `source.cx`, `model.cx` and the inclusion, projection and homotopy
/// maps, all relative to one directory.
pub fn minimal(file: &Path, out: Option<&Path>) -> CliResult<Report> {
    let cf = read_complex_file(file)?;
    let mm = minimal_model(&cf.complex)?;
    let mut rep = Report::new("minimal");
    describe(&mut rep, file, &cf.complex);
    rep.value("model_rank", mm.rank());
    rep.value("model_generators", mm.model().names().join(" "));
    rep.value("model_degrees", format!("{:?}", mm.model().generators().iter().map(|g| g.degree).collect::<Vec<_>>()));
    let verified = mm.verify();
    if let Err(e) = &verified {
        rep.note(&e.to_string());
    }
    rep.check("certificates", verified.is_ok());
    if let Some(dir) = out {
        write(dir, "source.cx", &write_complex(&cf))?;
        let mut model = ComplexFile::new(mm.model().clone());
        model.augmentation = cf.augmentation.as_ref().map(|a| mm.pull_back(a));
        write(dir, "model.cx", &write_complex(&model))?;
        write(dir, "inclusion.map", &map_text("model.cx", "source.cx", mm.inclusion()))?;
        write(dir, "projection.map", &map_text("source.cx", "model.cx", mm.projection()))?;
        let h = mm.homotopy();
        write(dir, "homotopy.map", &write_map("source.cx", "source.cx", h.source(), h.target(), h.matrix()))?;
        rep.value("output", dir.display());
    }
    Ok(rep)
}

/// The filtration of the file's complex, replaced by its minimal model when
/// it is not minimal.
pub fn filtration(file: &Path) -> CliResult<Report> {
    let cf = read_complex_file(file)?;
    let mut rep = Report::new("filtration");
    describe(&mut rep, file, &cf.complex);
    let (model, aug) = if is_minimal(&cf.complex) {
        (cf.complex.clone(), cf.augmentation.clone())
    } else {
        let mm = minimal_model(&cf.complex)?;
        rep.note("the complex is not minimal; using its minimal model");
        (mm.model().clone(), cf.augmentation.as_ref().map(|a| mm.pull_back(a)))
    };
    let f = compute_filtration(&model)?;
    rep.value("model_rank", model.len());
    rep.value("dims", format!("{:?}", f.dims()));
    rep.value("length", f.length());
    let props = check_properties(&f, &model, aug.as_ref());
    rep.check("ascending", props.ascending);
    rep.check("boundary lowers level", props.boundary_lowers_level);
    if let Some(b) = props.augmentation_on_first_level {
        rep.check("augmentation nonzero on first level", b);
    }
    rep.check("graded boundary nonzero on each level", props.graded_boundary_nonzero);
    for failure in &props.failures {
        rep.note(failure);
    }
    let bounds = bound_checks(&model, &f, &lambda_ops(&model)?);
    rep.block(&bounds.to_string());
    rep.check("bounds", bounds.all_pass());
    Ok(rep)
}

/// `α: K_r(m) → model` and `β: model → K_r(0)`, with the report of the
/// bounds they certify.
pub fn lift(file: &Path, m: Option<u32>, out: Option<&Path>) -> CliResult<Report> {
    let cf = read_complex_file(file)?;
    let aug = require_augmentation(&cf)?;
    let cor = verify_cor43(&cf.complex, aug, m)?;
    let mut rep = Report::new("lift");
    describe(&mut rep, file, &cf.complex);
    rep.check("alpha is a chain map", is_chain_map(&cor.alpha).is_ok());
    rep.check("beta is a chain map", is_chain_map(&cor.beta).is_ok());
    rep.value("alpha_homogeneous", cor.alpha.is_homogeneous());
    rep.value("beta_homogeneous", cor.beta.is_homogeneous());
    rep.block(&cor.to_string());
    rep.check("factorization bounds", cor.all_pass());
    if let Some(dir) = out {
        let ring = cf.complex.ring();
        let source = koszul(ring, cor.m);
        let target = koszul(ring, 0);
        write(dir, "koszul_source.cx", &write_complex(&with_structure(&source)))?;
        write(dir, "koszul_target.cx", &write_complex(&with_structure(&target)))?;
        write(dir, "model.cx", &write_complex(&ComplexFile::new(cor.model.clone())))?;
        write(dir, "alpha.map", &map_text("koszul_source.cx", "model.cx", &cor.alpha))?;
        write(dir, "beta.map", &map_text("model.cx", "koszul_target.cx", &cor.beta))?;
        rep.value("output", dir.display());
    }
    Ok(rep)
}

pub fn verify_map(file: &Path, mode: RankMode) -> CliResult<Report> {
    let (source, target, map) = read_map_file(file)?;
    let mut rep = Report::new("verify-map");
    rep.value("file", file.display());
    rep.value("source", &map.source_path);
    rep.value("target", &map.target_path);
    rep.value("shape", format!("{}x{}", map.matrix.rows(), map.matrix.cols()));
    let f = ChainMap::new(source.complex, target.complex, map.matrix)?;
    match is_chain_map(&f) {
        Ok(()) => rep.check("chain map", true),
        Err(e) => {
            rep.note(&e.to_string());
            rep.check("chain map", false);
        }
    }
    rep.value("homogeneous", f.is_homogeneous());
    rep.value("rank", rank_of_map(&f, mode));
    Ok(rep)
}

/// `K_r(m)` with its augmentation and product, written to `out` or printed.
pub fn koszul_file(ring: RingSpec, m: u32, out: Option<&Path>) -> CliResult<Report> {
    let k = koszul(ring, m);
    let text = write_complex(&with_structure(&k));
    let Some(path) = out else {
        return Ok(Report::raw(text));
    };
    std::fs::write(path, &text)?;
    let mut rep = Report::new("koszul");
    rep.value("ring", ring);
    rep.value("m", m);
    rep.value("generators", k.len());
    rep.value("output", path.display());
    Ok(rep)
}
