//! End-to-end checks of every headline result on concrete instances. Each
//! criterion prints one PASS/FAIL line; the test fails if any criterion does.

use std::io::Write;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use koszul_core::chainmap::{
    is_chain_map, perturb, random_homotopy, rank_of_map, rank_six_homotopy, restricted_rank, standard_iota, RankMode,
};
use koszul_core::complex::random::{random_complex, RandomComplexOptions};
use koszul_core::complex::{homology_k, koszul, min_generators_of_homology, tensor_quotient};
use koszul_core::filtration::{bound_checks, check_properties, compute_filtration};
use koszul_core::lift::{lift_alpha, multiplicative_alpha, verify_cor43};
use koszul_core::minimal::{lambda_ops, minimal_model, minimal_model_with_order, PivotOrder};
use koszul_core::ring::random::random_matrix;
use koszul_core::ring::{bareiss_rank, rank_exact, rank_probabilistic, FieldSpec, PolyMatrix, Polynomial, RingSpec};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

type Outcome = Result<(), String>;

fn ring(p: u64, r: usize, w: u32) -> RingSpec {
    let field = if p == 0 { FieldSpec::rationals() } else { FieldSpec::prime(p) };
    RingSpec::new(field, r, w).unwrap()
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Outcome {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn rank_six_example() -> Outcome {
    let start = Instant::now();
    let ring = ring(2, 3, 1);
    let iota = standard_iota(ring, 1);
    let gamma = perturb(&iota, &rank_six_homotopy(ring).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
    is_chain_map(&gamma).map_err(|e| e.to_string())?;
    let k1 = koszul(ring, 1);
    let mut x = k1.complex().zero_element();
    x[k1.index_of(&[1, 2])] = Polynomial::var(ring, 0).mul(&Polynomial::var(ring, 2));
    x[k1.index_of(&[1, 2, 3])] = Polynomial::var(ring, 1);
    let dx = k1.complex().apply_d(&x);
    ensure(gamma.apply(&x).iter().all(Polynomial::is_zero), || "gamma(x) != 0".into())?;
    ensure(gamma.apply(&dx).iter().all(Polynomial::is_zero), || "gamma(dx) != 0".into())?;
    let pair = PolyMatrix::from_columns(ring, x.len(), &[x, dx]);
    ensure(rank_exact(&pair) == 2, || "x and dx are dependent".into())?;
    let rank = rank_of_map(&gamma, RankMode::Exact);
    ensure(rank == 6, || format!("rank {rank}, expected 6"))?;
    ensure(start.elapsed() < Duration::from_secs(1), || format!("took {:?}", start.elapsed()))
}

fn iota_full_rank() -> Outcome {
    let start = Instant::now();
    for p in [2, 0] {
        for w in 1..=2 {
            for r in 1..=5 {
                for m in 0..=2 {
                    let rank = rank_of_map(&standard_iota(ring(p, r, w), m), RankMode::Exact);
                    ensure(rank == 1 << r, || format!("p={p} w={w} r={r} m={m}: rank {rank}"))?;
                }
            }
        }
    }
    ensure(start.elapsed() < Duration::from_secs(30), || format!("took {:?}", start.elapsed()))
}

fn perturbed_rank_at_least_2r() -> Outcome {
    let start = Instant::now();
    for (r, trials) in [(3, 500u64), (4, 200)] {
        for p in [2, 0] {
            let ring = ring(p, r, 1);
            let iota = standard_iota(ring, 1);
            let low = (0..trials)
                .into_par_iter()
                .map(|seed| {
                    let mut rng = ChaCha8Rng::seed_from_u64(seed * 1000 + r as u64 * 10 + p);
                    let h = random_homotopy(iota.source(), iota.target(), false, &mut rng);
                    let gamma = perturb(&iota, &h).unwrap();
                    (rank_of_map(&gamma, RankMode::Exact), seed)
                })
                .min()
                .expect("trials");
            ensure(low.0 >= 2 * r, || format!("r={r} p={p} seed {}: rank {}", low.1, low.0))?;
        }
    }
    ensure(start.elapsed() < Duration::from_secs(180), || format!("took {:?}", start.elapsed()))
}

fn degree_preserving_restricted_rank() -> Outcome {
    for r in 3..=4 {
        for m in 1..=2 {
            let ring = ring(0, r, 2);
            let k0 = koszul(ring, 0);
            let alpha = lift_alpha(k0.complex(), &k0.augmentation(), m).map_err(|e| e.to_string())?;
            ensure(alpha.is_homogeneous(), || "lift is not degree-preserving".into())?;
            is_chain_map(&alpha).map_err(|e| e.to_string())?;
            let unit = k0.augmentation().apply(&alpha.matrix().column_element(0));
            ensure(unit.is_one(), || "the lift does not preserve the augmentation".into())?;
            let k = koszul(ring, m);
            let mut gens: Vec<usize> = (1..=r).map(|i| k.index_of(&[i])).collect();
            gens.push(k.index_of(&[1, 2, 3]));
            let mut rng = ChaCha8Rng::seed_from_u64(r as u64 * 10 + m as u64);
            for trial in 0..10 {
                let gamma = if trial == 0 {
                    alpha.clone()
                } else {
                    let h = random_homotopy(alpha.source(), alpha.target(), true, &mut rng);
                    perturb(&alpha, &h).map_err(|e| e.to_string())?
                };
                ensure(gamma.is_homogeneous(), || "perturbation left the degree".into())?;
                let rank = restricted_rank(&gamma, &gens).map_err(|e| e.to_string())?;
                ensure(rank == r + 1, || format!("r={r} m={m} trial {trial}: restricted rank {rank}"))?;
            }
        }
    }
    Ok(())
}

struct Sample {
    p: u64,
    complex: koszul_core::complex::FreeComplex,
}

fn random_samples() -> Vec<Sample> {
    (0..100u64)
        .map(|seed| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let p = [0, 2, 3][seed as usize % 3];
            let r = rng.gen_range(2..=3);
            let w = rng.gen_range(1..=2);
            let opts = RandomComplexOptions { max_generators: 12, ..Default::default() };
            Sample { p, complex: random_complex(ring(p, r, w), opts, &mut rng).complex }
        })
        .collect()
}

fn minimal_model_certificates() -> Outcome {
    for (k, s) in random_samples().iter().enumerate() {
        let c = &s.complex;
        let mm = minimal_model(c).map_err(|e| format!("sample {k}: {e}"))?;
        mm.verify().map_err(|e| format!("sample {k}: {e}"))?;
        let ones = vec![1; c.ring().num_vars];
        let dim = homology_k(tensor_quotient(c, &ones).unwrap().complex()).total_dim();
        ensure(mm.rank() == dim, || format!("sample {k} (p={}): rank {} vs dim H {dim}", s.p, mm.rank()))?;
        let again = minimal_model(mm.model()).map_err(|e| e.to_string())?;
        ensure(again.model() == mm.model(), || format!("sample {k}: not idempotent"))?;
        for order in 0..5 {
            let other = minimal_model_with_order(c, PivotOrder::Seeded(order)).map_err(|e| e.to_string())?;
            ensure(other.rank() == mm.rank(), || format!("sample {k}: pivot order {order} changes the rank"))?;
        }
    }
    Ok(())
}

fn filtration_checks() -> Outcome {
    for r in 1..=5 {
        let k0 = koszul(ring(2, r, 1), 0);
        let len = compute_filtration(k0.complex()).map_err(|e| e.to_string())?.length();
        ensure(len == r + 1, || format!("K_{r}(0): length {len}"))?;
    }
    for (k, s) in random_samples().iter().enumerate() {
        let mm = minimal_model(&s.complex).map_err(|e| e.to_string())?;
        if mm.rank() == 0 {
            continue;
        }
        let f = compute_filtration(mm.model()).map_err(|e| e.to_string())?;
        let props = check_properties(&f, mm.model(), None);
        ensure(props.ascending && props.boundary_lowers_level && props.graded_boundary_nonzero, || {
            format!("sample {k}: {}", props.failures.join("; "))
        })?;
        let b = bound_checks(mm.model(), &f, &lambda_ops(mm.model()).map_err(|e| e.to_string())?);
        ensure(b.twice_length, || format!("sample {k}: dim {} < 2(len - 1) with len {}", b.dim_h, b.length))?;
    }
    Ok(())
}

fn factorization_pipeline() -> Outcome {
    for p in [2, 0] {
        for r in 2..=4 {
            let k = koszul(ring(p, r, 1), 1);
            let rep = verify_cor43(k.complex(), &k.augmentation(), Some(1)).map_err(|e| e.to_string())?;
            ensure(rep.unit_preserved, || format!("r={r}: unit not preserved"))?;
            ensure(rep.beta_filtered, || format!("r={r}: beta leaves the filtration"))?;
            ensure(rep.rank_bound(), || format!("r={r}: composite rank {}", rep.composite_rank))?;
            ensure(rep.filtration_route() && rep.dim_bound(), || format!("r={r}: routes disagree\n{rep}"))?;
            ensure(rep.all_pass(), || format!("r={r}:\n{rep}"))?;
        }
    }
    Ok(())
}

fn quotient_generators() -> Outcome {
    for p in [2, 0] {
        for r in 2..=4 {
            for m in 1..=2 {
                let k = koszul(ring(p, r, 1), m);
                let n = min_generators_of_homology(k.complex(), &vec![m + 1; r]).map_err(|e| e.to_string())?;
                ensure(n == 1 << r, || format!("p={p} r={r} m={m}: {n} generators"))?;
            }
        }
    }
    Ok(())
}

fn multiplicative_lift() -> Outcome {
    for p in [2, 0] {
        for r in 1..=4 {
            for m in 0..=2 {
                let k0 = koszul(ring(p, r, 1), 0);
                let lift = multiplicative_alpha(k0.complex(), k0.products(), &k0.augmentation(), m)
                    .map_err(|e| e.to_string())?;
                ensure(lift.rank == 1 << r, || format!("p={p} r={r} m={m}: rank {}", lift.rank))?;
            }
        }
    }
    Ok(())
}

fn rank_oracles_agree() -> Outcome {
    for p in [2, 0] {
        for seed in 0..3u64 {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for k in 0..100 {
                let ring = ring(p, rng.gen_range(1..=3), 1);
                let (rows, cols) = (rng.gen_range(1..=10), rng.gen_range(1..=10));
                let m = random_matrix(ring, rows, cols, 3, rng.gen_range(0.2..0.8), &mut rng);
                let (exact, prob) = (bareiss_rank(&m), rank_probabilistic(&m, seed * 1000 + k));
                ensure(exact == prob, || format!("p={p} seed {seed} matrix {k}: exact {exact}, evaluated {prob}"))?;
            }
        }
    }
    Ok(())
}

type Criterion = (&'static str, fn() -> Outcome);

#[test]
fn acceptance_criteria() {
    let criteria: [Criterion; 10] = [
        ("rank-six perturbation of iota at r = 3", rank_six_example),
        ("iota has rank 2^r", iota_full_rank),
        ("perturbations of iota have rank >= 2r", perturbed_rank_at_least_2r),
        ("degree-preserving lifts are injective on s_1..s_r, s_123", degree_preserving_restricted_rank),
        ("minimal model certificates", minimal_model_certificates),
        ("filtration length and properties", filtration_checks),
        ("factorization through the minimal model", factorization_pipeline),
        ("generators of homology modulo powers", quotient_generators),
        ("multiplicative lift has rank 2^r", multiplicative_lift),
        ("evaluated rank agrees with exact rank", rank_oracles_agree),
    ];
    let mut failed = Vec::new();
    let mut out = std::io::stdout().lock();
    for (k, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(()) => writeln!(out, "criterion {:>2}: PASS  {name} ({secs:.2}s)", k + 1).unwrap(),
            Err(e) => {
                writeln!(out, "criterion {:>2}: FAIL  {name} ({secs:.2}s): {e}", k + 1).unwrap();
                failed.push(k + 1);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
