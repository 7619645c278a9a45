use koszul_core::complex::random::{random_complex, RandomComplexOptions};
use koszul_core::complex::FreeComplex;
use koszul_core::filtration::{bound_checks, check_properties, compute_filtration};
use koszul_core::minimal::{lambda_ops, minimal_model};
use koszul_core::ring::{FieldSpec, RingSpec};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn random_model(seed: u64, p: u64, r: usize, w: u32) -> Option<FreeComplex> {
    let field = if p == 0 { FieldSpec::rationals() } else { FieldSpec::prime(p) };
    let ring = RingSpec::new(field, r, w).unwrap();
    let opts = RandomComplexOptions { max_generators: 12, ..Default::default() };
    let c = random_complex(ring, opts, &mut ChaCha8Rng::seed_from_u64(seed)).complex;
    let model = minimal_model(&c).unwrap().model().clone();
    (!model.is_empty()).then_some(model)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn structure_and_bounds(seed in any::<u64>(), p in prop::sample::select(vec![0u64, 2]), r in 2usize..=3, w in 1u32..=2) {
        let Some(model) = random_model(seed, p, r, w) else { return Ok(()) };
        let f = compute_filtration(&model).unwrap();
        prop_assert!(f.length() <= model.len());
        let props = check_properties(&f, &model, None);
        prop_assert!(props.all_pass(), "{:?}", props.failures);
        let b = bound_checks(&model, &f, &lambda_ops(&model).unwrap());
        prop_assert!(b.all_pass(), "{}", b);
    }

    #[test]
    fn independent_of_generator_order(seed in any::<u64>(), p in prop::sample::select(vec![0u64, 3]), r in 2usize..=3) {
        let Some(model) = random_model(seed, p, r, 1) else { return Ok(()) };
        let mut perm: Vec<usize> = (0..model.len()).collect();
        perm.shuffle(&mut ChaCha8Rng::seed_from_u64(!seed));
        let f = compute_filtration(&model).unwrap();
        let g = compute_filtration(&model.permuted(&perm)).unwrap();
        prop_assert_eq!(f.dims(), g.dims());
        for i in 0..f.num_levels() {
            for (_, v) in f.homogeneous_basis(i) {
                let moved: Vec<_> = perm.iter().map(|&k| v[k].clone()).collect();
                prop_assert!(g.contains(i, &moved));
            }
        }
    }
}
