use koszul_core::complex::random::{random_complex, RandomComplexOptions};
use koszul_core::complex::{homology_k, tensor_quotient, FreeComplex};
use koszul_core::minimal::{
    is_minimal, lambda_length, lambda_ops, minimal_model, minimal_model_with_order, PivotOrder,
};
use koszul_core::ring::{FieldSpec, RingSpec};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn ring(p: u64, r: usize, w: u32) -> RingSpec {
    let field = if p == 0 { FieldSpec::rationals() } else { FieldSpec::prime(p) };
    RingSpec::new(field, r, w).unwrap()
}

fn sample(seed: u64, p: u64, r: usize, w: u32, max_generators: usize) -> FreeComplex {
    let opts = RandomComplexOptions { max_generators, ..Default::default() };
    random_complex(ring(p, r, w), opts, &mut ChaCha8Rng::seed_from_u64(seed)).complex
}

fn dim_mod_t(c: &FreeComplex) -> usize {
    let a = vec![1; c.ring().num_vars];
    homology_k(tensor_quotient(c, &a).unwrap().complex()).total_dim()
}

fn degree_multiset(c: &FreeComplex) -> Vec<i64> {
    let mut d: Vec<i64> = c.generators().iter().map(|g| g.degree).collect();
    d.sort_unstable();
    d
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn model_certificates(seed in any::<u64>(), p in prop::sample::select(vec![0u64, 2, 3]), r in 2usize..=3, w in 1u32..=2) {
        let c = sample(seed, p, r, w, 12);
        let mm = minimal_model(&c).unwrap();
        mm.verify().unwrap();
        prop_assert!(is_minimal(mm.model()));
        prop_assert_eq!(mm.rank(), dim_mod_t(&c));
        let again = minimal_model(mm.model()).unwrap();
        prop_assert_eq!(again.model(), mm.model());
        let lambda = lambda_ops(mm.model()).unwrap();
        prop_assert!(lambda.anticommutation_failure().is_none());
        let sum: usize = lambda.degrees().iter().map(|&q| lambda_length(&lambda, q)).sum();
        prop_assert!(mm.rank() >= sum);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn pivot_order_does_not_change_the_model(seed in any::<u64>(), p in prop::sample::select(vec![0u64, 2, 5]), r in 2usize..=3) {
        let c = sample(seed, p, r, 1, 14);
        let base = minimal_model(&c).unwrap();
        for k in 0..20u64 {
            let mm = minimal_model_with_order(&c, PivotOrder::Seeded(seed ^ k)).unwrap();
            mm.verify().unwrap();
            prop_assert_eq!(degree_multiset(mm.model()), degree_multiset(base.model()));
        }
    }
}
