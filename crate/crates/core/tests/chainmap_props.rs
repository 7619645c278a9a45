use koszul_core::chainmap::{
    induced_map_mod, is_chain_map, perturb, random_homotopy, rank_of_map, standard_iota, Homotopy, RankMode,
};
use koszul_core::ring::random::random_matrix;
use koszul_core::ring::{FieldSpec, RingSpec};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn field(rational: bool) -> FieldSpec {
    if rational {
        FieldSpec::rationals()
    } else {
        FieldSpec::prime(2)
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn perturbation_is_a_chain_map(seed in any::<u64>(), r in 2usize..=3, rational in any::<bool>(), m in 0u32..=2) {
        let ring = RingSpec::new(field(rational), r, 1).unwrap();
        let iota = standard_iota(ring, m);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = iota.source().len();
        let h = Homotopy::new(iota.source().clone(), iota.target().clone(), random_matrix(ring, n, n, 3, 0.8, &mut rng)).unwrap();
        prop_assert!(is_chain_map(&perturb(&iota, &h).unwrap()).is_ok());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn maps_homotopic_to_iota_have_rank_at_least_2r_r3(seed in any::<u64>(), rational in any::<bool>()) {
        let ring = RingSpec::new(field(rational), 3, 1).unwrap();
        let iota = standard_iota(ring, 1);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let h = random_homotopy(iota.source(), iota.target(), false, &mut rng);
        prop_assert!(rank_of_map(&perturb(&iota, &h).unwrap(), RankMode::Exact) >= 6);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn maps_homotopic_to_iota_have_rank_at_least_2r_r4(seed in any::<u64>(), rational in any::<bool>()) {
        let ring = RingSpec::new(field(rational), 4, 1).unwrap();
        let iota = standard_iota(ring, 1);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let h = random_homotopy(iota.source(), iota.target(), false, &mut rng);
        prop_assert!(rank_of_map(&perturb(&iota, &h).unwrap(), RankMode::Exact) >= 8);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn homotopic_maps_induce_equal_maps(seed in any::<u64>(), rational in any::<bool>()) {
        let ring = RingSpec::new(field(rational), 2, 1).unwrap();
        let iota = standard_iota(ring, 1);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let h = random_homotopy(iota.source(), iota.target(), false, &mut rng);
        let a = [2, 2];
        prop_assert_eq!(
            induced_map_mod(&perturb(&iota, &h).unwrap(), &a).unwrap().matrix,
            induced_map_mod(&iota, &a).unwrap().matrix
        );
    }
}

#[test]
fn iota_has_full_rank() {
    for w in 1..=2 {
        for r in 1..=5 {
            let ring = RingSpec::new(FieldSpec::rationals(), r, w).unwrap();
            assert_eq!(rank_of_map(&standard_iota(ring, 2), RankMode::Exact), 1 << r);
        }
    }
}
