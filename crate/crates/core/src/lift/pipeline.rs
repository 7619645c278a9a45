//! The factorization `K_r(m) → H̃ → K_r(0)` through a minimal model and the
//! bounds it certifies.

use std::fmt;

use super::{lift_alpha, lift_beta, preserves_filtration};
use crate::chainmap::{rank_of_map, restricted_rank, ChainMap, RankMode};
use crate::complex::{koszul, Augmentation, FreeComplex};
use crate::error::{Error, Result};
use crate::filtration::{bound_checks, check_properties, compute_filtration, BoundReport, Filtration, PropertyReport};
use crate::minimal::{lambda_ops, minimal_model};

/// Exponents tried when none is given.
pub const MAX_SEARCHED_EXPONENT: u32 = 6;

fn verdict(b: bool) -> &'static str {
    if b {
        "PASS"
    } else {
        "FAIL"
    }
}

/// `α` for the given exponent, or for the least exponent up to
/// [`MAX_SEARCHED_EXPONENT`] without obstruction.
fn alpha_for(model: &FreeComplex, eps: &Augmentation, m: Option<u32>) -> Result<(u32, ChainMap)> {
    if let Some(m) = m {
        return Ok((m, lift_alpha(model, eps, m)?));
    }
    let mut last = None;
    for m in 0..=MAX_SEARCHED_EXPONENT {
        match lift_alpha(model, eps, m) {
            Ok(a) => return Ok((m, a)),
            Err(e @ Error::Obstruction { .. }) => last = Some(e),
            Err(e) => return Err(e),
        }
    }
    Err(last.expect("at least one exponent tried"))
}

struct Factorization {
    model: FreeComplex,
    filtration: Filtration,
    properties: PropertyReport,
    m: u32,
    alpha: ChainMap,
    beta: ChainMap,
    gamma: ChainMap,
}

fn factor(c: &FreeComplex, aug: &Augmentation, m: Option<u32>) -> Result<Factorization> {
    aug.validate(c)?;
    let mm = minimal_model(c)?;
    mm.verify()?;
    let eps = mm.pull_back(aug);
    let model = mm.model().clone();
    let filtration = compute_filtration(&model)?;
    let properties = check_properties(&filtration, &model, Some(&eps));
    let (m, alpha) = alpha_for(&model, &eps, m)?;
    let beta = lift_beta(&model, &filtration, &eps)?;
    let gamma = beta.compose(&alpha)?;
    Ok(Factorization { model, filtration, properties, m, alpha, beta, gamma })
}

#[derive(Clone, Debug)]
pub struct FactorizationReport {
    pub r: usize,
    /// Exponent `m` of the source `K_r(m)` of `α`.
    pub m: u32,
    pub model: FreeComplex,
    pub alpha: ChainMap,
    pub beta: ChainMap,
    /// `ε_K(β α(1)) = 1`.
    pub unit_preserved: bool,
    pub beta_filtered: bool,
    pub composite_rank: usize,
    pub filtration_dims: Vec<usize>,
    pub properties: PropertyReport,
    pub bounds: BoundReport,
}

impl FactorizationReport {
    pub fn rank_bound(&self) -> bool {
        self.composite_rank >= 2 * self.r
    }

    /// The composite factors through the model, so the model is at least as
    /// large as its rank.
    pub fn dim_bound(&self) -> bool {
        self.bounds.dim_h >= self.composite_rank && self.bounds.dim_h >= 2 * self.r
    }

    /// `Σ ℓ_Λ ≥ length ≥ r + 1`.
    pub fn length_bound(&self) -> bool {
        self.bounds.lambda_vs_length && self.bounds.length > self.r
    }

    /// `#{q : H^q ≠ 0} ≥ r + 1` when the linear part of the boundary vanishes.
    pub fn degree_bound(&self) -> Option<bool> {
        self.bounds.trivial_action.then_some(self.bounds.nonzero_degrees > self.r)
    }

    /// `dim H ≥ 2 (length - 1) ≥ 2r`, the route through the filtration alone.
    pub fn filtration_route(&self) -> bool {
        self.bounds.twice_length && self.bounds.length > self.r
    }

    pub fn all_pass(&self) -> bool {
        self.unit_preserved
            && self.beta_filtered
            && self.properties.all_pass()
            && self.bounds.all_pass()
            && self.rank_bound()
            && self.dim_bound()
            && self.length_bound()
            && self.degree_bound() != Some(false)
            && self.filtration_route()
    }
}

/// Runs minimal model, filtration, `α` and `β` on `c` and checks every bound
/// the factorization gives. With `m = None` the least workable exponent is
/// searched.
pub fn verify_cor43(c: &FreeComplex, aug: &Augmentation, m: Option<u32>) -> Result<FactorizationReport> {
    let fz = factor(c, aug, m)?;
    let k0 = koszul(c.ring(), 0);
    let unit = k0.augmentation().apply(&fz.gamma.matrix().column_element(0));
    let bounds = bound_checks(&fz.model, &fz.filtration, &lambda_ops(&fz.model)?);
    Ok(FactorizationReport {
        r: c.ring().num_vars,
        m: fz.m,
        unit_preserved: unit.is_one(),
        beta_filtered: preserves_filtration(&fz.beta, &fz.filtration),
        composite_rank: rank_of_map(&fz.gamma, RankMode::Exact),
        filtration_dims: fz.filtration.dims(),
        properties: fz.properties,
        bounds,
        model: fz.model,
        alpha: fz.alpha,
        beta: fz.beta,
    })
}

impl fmt::Display for FactorizationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "r = {}", self.r)?;
        writeln!(f, "m = {}", self.m)?;
        writeln!(f, "model_rank = {}", self.model.len())?;
        writeln!(f, "composite_rank = {}", self.composite_rank)?;
        writeln!(f, "filtration_dims = {:?}", self.filtration_dims)?;
        write!(f, "{}", self.bounds)?;
        writeln!(f, "unit_preserved: {}", verdict(self.unit_preserved))?;
        writeln!(f, "beta_preserves_filtration: {}", verdict(self.beta_filtered))?;
        writeln!(f, "filtration_properties: {}", verdict(self.properties.all_pass()))?;
        for failure in &self.properties.failures {
            writeln!(f, "  {failure}")?;
        }
        writeln!(f, "composite_rank >= 2r: {}", verdict(self.rank_bound()))?;
        writeln!(f, "dim_h >= composite_rank, 2r: {}", verdict(self.dim_bound()))?;
        writeln!(f, "sum_lambda_lengths >= length >= r+1: {}", verdict(self.length_bound()))?;
        match self.degree_bound() {
            Some(b) => writeln!(f, "nonzero_degrees >= r+1: {}", verdict(b))?,
            None => writeln!(f, "nonzero_degrees >= r+1: SKIPPED (nontrivial lambda action)")?,
        }
        writeln!(f, "dim_h >= 2*(length-1) >= 2r: {}", verdict(self.filtration_route()))
    }
}

#[derive(Clone, Debug)]
pub struct Case0Report {
    pub r: usize,
    pub m: u32,
    pub dim_h: usize,
    pub composite: ChainMap,
    /// Rank of `β α` on `s_1, ..., s_r, s_123`.
    pub restricted_rank: usize,
    pub even_rank: usize,
    pub odd_rank: usize,
}

impl Case0Report {
    pub fn bound(&self) -> usize {
        2 * (self.r + 1)
    }

    pub fn all_pass(&self) -> bool {
        self.restricted_rank == self.r + 1 && self.even_rank == self.odd_rank && self.dim_h >= self.bound()
    }
}

impl fmt::Display for Case0Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "r = {}", self.r)?;
        writeln!(f, "m = {}", self.m)?;
        writeln!(f, "dim_h = {}", self.dim_h)?;
        writeln!(f, "restricted_rank = {}", self.restricted_rank)?;
        writeln!(f, "even_rank = {}", self.even_rank)?;
        writeln!(f, "odd_rank = {}", self.odd_rank)?;
        writeln!(f, "bound = {}", self.bound())?;
        writeln!(f, "restricted_rank = r+1: {}", verdict(self.restricted_rank == self.r + 1))?;
        writeln!(f, "even_rank = odd_rank: {}", verdict(self.even_rank == self.odd_rank))?;
        writeln!(f, "dim_h >= 2(r+1): {}", verdict(self.dim_h >= self.bound()))
    }
}

/// With `deg t_i = 2` over a field of characteristic zero and `r ≥ 3`: the
/// degree-preserving composite `β α` is injective on `s_1, ..., s_r, s_123`,
/// the odd part of the model has rank at least `r + 1`, and so
/// `dim H ≥ 2(r + 1)`.
pub fn case0_improved_bound(
    c: &FreeComplex,
    aug: &Augmentation,
    m: Option<u32>,
    degree_preserving: bool,
) -> Result<Case0Report> {
    let ring = c.ring();
    if ring.weight != 2 || ring.field.characteristic() != 0 || ring.num_vars < 3 {
        return Err(Error::Precondition("needs deg t_i = 2, characteristic 0 and at least 3 variables".into()));
    }
    if !degree_preserving {
        return Err(Error::Precondition("the injectivity argument needs degree-preserving lifts".into()));
    }
    let fz = factor(c, aug, m)?;
    if !fz.gamma.is_homogeneous() {
        return Err(Error::Precondition("the composite does not preserve degrees".into()));
    }
    let k = koszul(ring, fz.m);
    let mut gens: Vec<usize> = (1..=ring.num_vars).map(|i| k.index_of(&[i])).collect();
    gens.push(k.index_of(&[1, 2, 3]));
    let restricted = restricted_rank(&fz.gamma, &gens)?;
    let odd = (0..fz.model.len()).filter(|&i| fz.model.degree(i).rem_euclid(2) == 1).count();
    Ok(Case0Report {
        r: ring.num_vars,
        m: fz.m,
        dim_h: fz.model.len(),
        composite: fz.gamma,
        restricted_rank: restricted,
        even_rank: fz.model.len() - odd,
        odd_rank: odd,
    })
}
