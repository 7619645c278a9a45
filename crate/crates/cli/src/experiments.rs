//! Experiments on perturbations `ι + dh + hd` of the standard map
//! `K_r(m) → K_r(0)`.

use std::collections::BTreeMap;
use std::path::Path;

use koszul_core::chainmap::{
    is_chain_map, perturb, random_homotopy, rank_of_map, rank_six_homotopy, standard_iota, write_map, ChainMap,
    Homotopy, RankMode,
};
use koszul_core::complex::format::{write_complex, ComplexFile};
use koszul_core::complex::koszul;
use koszul_core::ring::random::random_monomial_of_degree;
use koszul_core::ring::{rank_exact, FieldSpec, PolyMatrix, Polynomial, RingSpec};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::report::Report;
use crate::{CliError, CliResult};

/// Candidates evaluated per step of the local search.
const SEARCH_BATCH: usize = 8;

fn mode_name(mode: RankMode) -> String {
    match mode {
        RankMode::Exact => "exact".into(),
        RankMode::Probabilistic(seed) => format!("probabilistic (seed {seed})"),
    }
}

fn stream(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// The rank-six map on `K_3(1) → K_3(0)` over `F_2`, or its rejection when
/// `deg t_i = 2`.
pub fn example22(weight: u32, characteristic: u64, mode: RankMode) -> CliResult<Report> {
    if characteristic != 2 {
        return Err(CliError::Usage(format!(
            "the rank-six example lives over F_2, not characteristic {characteristic}"
        )));
    }
    let ring = RingSpec::new(FieldSpec::prime(2), 3, weight)?;
    let h = rank_six_homotopy(ring)?;
    let mut rep = Report::new("example22");
    rep.value("field", "F_2");
    rep.value("r", 3);
    rep.value("m", 1);
    rep.value("weight", weight);
    rep.value("rank_mode", mode_name(mode));
    if !h.is_homogeneous() {
        rep.value("construction", "rejected");
        rep.note("h(s_1) = s_123 and h(s_23) = t_3 s_12 are not both of degree -1 when deg t_i = 2");
        rep.check("construction rejected for deg t_i = 2", weight == 2);
        return Ok(rep);
    }
    let gamma = perturb(&standard_iota(ring, 1), &h)?;
    rep.check("gamma is a chain map", is_chain_map(&gamma).is_ok());
    rep.check("gamma is homogeneous", gamma.is_homogeneous());

    let k1 = koszul(ring, 1);
    let mut x = k1.complex().zero_element();
    x[k1.index_of(&[1, 2])] = Polynomial::var(ring, 0).mul(&Polynomial::var(ring, 2));
    x[k1.index_of(&[1, 2, 3])] = Polynomial::var(ring, 1);
    let dx = k1.complex().apply_d(&x);
    let names = k1.complex().names();
    rep.value("x", koszul_core::ring::format_combination(&x, &names));
    rep.value("dx", koszul_core::ring::format_combination(&dx, &names));
    rep.check("gamma(x) = 0", gamma.apply(&x).iter().all(Polynomial::is_zero));
    rep.check("gamma(dx) = 0", gamma.apply(&dx).iter().all(Polynomial::is_zero));
    let pair = PolyMatrix::from_columns(ring, x.len(), &[x, dx]);
    rep.check("x and dx are independent", rank_exact(&pair) == 2);
    let rank = rank_of_map(&gamma, mode);
    rep.value("rank", rank);
    rep.check("rank = 6", rank == 6);
    Ok(rep)
}

/// Ranks of `ι + dh + hd` for `trials` random homotopies; trial `i` draws
/// from stream `i` of the seed.
pub fn rank_survey(ring: RingSpec, m: u32, trials: usize, seed: u64, mode: RankMode) -> CliResult<Report> {
    if trials == 0 {
        return Err(CliError::Usage("--trials must be at least 1".into()));
    }
    let iota = standard_iota(ring, m);
    let ranks: Vec<usize> = (0..trials as u64)
        .into_par_iter()
        .map(|t| {
            let h = random_homotopy(iota.source(), iota.target(), false, &mut stream(seed, t));
            let gamma = perturb(&iota, &h).expect("homotopy built on the map's own complexes");
            rank_of_map(&gamma, mode)
        })
        .collect();
    let mut histogram = BTreeMap::new();
    for &k in &ranks {
        *histogram.entry(k).or_insert(0usize) += 1;
    }
    let min = *histogram.keys().next().expect("at least one trial");
    let bound = 2 * ring.num_vars;

    let mut rep = Report::new("rank-survey");
    rep.value("field", ring.field);
    rep.value("r", ring.num_vars);
    rep.value("weight", ring.weight);
    rep.value("m", m);
    rep.value("trials", trials);
    rep.value("seed", seed);
    rep.value("rank_mode", mode_name(mode));
    for (k, n) in &histogram {
        rep.value(&format!("histogram.rank_{k}"), n);
    }
    rep.value("min_rank", min);
    rep.value("max_rank", histogram.keys().next_back().expect("at least one trial"));
    rep.check(&format!("min rank >= 2r = {bound}"), min >= bound);
    Ok(rep)
}

/// Entries `(row, column, exponent degree)` where a monomial multiple of a
/// target generator has degree one less than the source generator.
fn homogeneous_slots(iota: &ChainMap) -> Vec<(usize, usize, u32)> {
    let (src, tgt) = (iota.source(), iota.target());
    let w = src.ring().weight as i64;
    let mut slots = Vec::new();
    for j in 0..src.len() {
        for i in 0..tgt.len() {
            let e = src.degree(j) - 1 - tgt.degree(i);
            if e >= 0 && e % w == 0 && e / w <= 2 {
                slots.push((i, j, (e / w) as u32));
            }
        }
    }
    slots
}

/// Sets one admissible entry of `h` to a random term of degree `-1`, or
/// clears it.
fn mutate(h: &PolyMatrix, slots: &[(usize, usize, u32)], rng: &mut ChaCha8Rng) -> PolyMatrix {
    let ring = h.ring();
    let mut out = h.clone();
    let (i, j, e) = slots[rng.gen_range(0..slots.len())];
    if !h.entry(i, j).is_zero() && rng.gen_bool(0.3) {
        out.set(i, j, Polynomial::zero(ring));
    } else {
        let mono = random_monomial_of_degree(ring.num_vars, e, rng);
        out.set(i, j, Polynomial::term(ring, mono, ring.field.random_nonzero(rng)));
    }
    out
}

/// Local search over sparse homogeneous homotopies, scoring candidates by the
/// probabilistic rank and re-verifying the best one exactly.
pub fn search_low_rank(ring: RingSpec, m: u32, budget: usize, seed: u64, out: Option<&Path>) -> CliResult<Report> {
    if ring.num_vars < 4 {
        let hint = if ring.num_vars == 3 {
            "for r = 3 the bound 2r = 6 is sharp and already attained; run `koszul example22`"
        } else {
            "for r <= 2 the bounds 2r and 2^r coincide"
        };
        return Err(CliError::Usage(format!("search-low-rank needs r >= 4: {hint}")));
    }
    let iota = standard_iota(ring, m);
    let slots = homogeneous_slots(&iota);
    let score = |h: &PolyMatrix, salt: u64| -> usize {
        let hom = Homotopy::new(iota.source().clone(), iota.target().clone(), h.clone()).expect("shape fixed by iota");
        rank_of_map(&perturb(&iota, &hom).expect("same complexes"), RankMode::Probabilistic(seed ^ salt))
    };
    let mut current = Homotopy::zero(iota.source(), iota.target()).matrix().clone();
    let mut current_rank = 1usize << ring.num_vars;
    let (mut best, mut best_rank) = (current.clone(), current_rank);
    let mut evaluated = 0usize;
    let mut step = 0u64;
    while evaluated < budget {
        let batch = SEARCH_BATCH.min(budget - evaluated);
        let scored: Vec<(usize, PolyMatrix)> = (0..batch as u64)
            .into_par_iter()
            .map(|b| {
                let mut rng = stream(seed, step * SEARCH_BATCH as u64 + b);
                let mut cand = mutate(&current, &slots, &mut rng);
                if rng.gen_bool(0.25) {
                    cand = mutate(&cand, &slots, &mut rng);
                }
                (score(&cand, step), cand)
            })
            .collect();
        evaluated += batch;
        step += 1;
        let (rank, cand) = scored.into_iter().min_by_key(|(k, _)| *k).expect("non-empty batch");
        if rank <= current_rank {
            current = cand;
            current_rank = rank;
            if rank < best_rank {
                best = current.clone();
                best_rank = rank;
            }
        }
    }

    let h = Homotopy::new(iota.source().clone(), iota.target().clone(), best)?;
    let gamma = perturb(&iota, &h)?;
    let exact = rank_exact(gamma.matrix());
    let mut rep = Report::new("search-low-rank");
    rep.value("field", ring.field);
    rep.value("r", ring.num_vars);
    rep.value("weight", ring.weight);
    rep.value("m", m);
    rep.value("budget", budget);
    rep.value("seed", seed);
    rep.value("candidates_evaluated", evaluated);
    rep.value("best_rank_probabilistic", best_rank);
    rep.value("best_rank_exact", exact);
    rep.value("homotopy_nonzero_entries", h.matrix().nnz());
    rep.check("gamma is a chain map", is_chain_map(&gamma).is_ok());
    rep.check(&format!("exact rank >= 2r = {}", 2 * ring.num_vars), exact >= 2 * ring.num_vars);
    rep.value("below_2^r", exact < 1 << ring.num_vars);
    if let Some(dir) = out {
        write_certificate(dir, &h, &gamma)?;
        rep.value("certificate", dir.display());
    }
    Ok(rep)
}

fn write_certificate(dir: &Path, h: &Homotopy, gamma: &ChainMap) -> CliResult<()> {
    std::fs::create_dir_all(dir)?;
    std::fs::write(dir.join("koszul_source.cx"), write_complex(&ComplexFile::new(gamma.source().clone())))?;
    std::fs::write(dir.join("koszul_target.cx"), write_complex(&ComplexFile::new(gamma.target().clone())))?;
    let map = |m: &PolyMatrix| write_map("koszul_source.cx", "koszul_target.cx", gamma.source(), gamma.target(), m);
    std::fs::write(dir.join("homotopy.map"), map(h.matrix()))?;
    std::fs::write(dir.join("gamma.map"), map(gamma.matrix()))?;
    Ok(())
}
