use koszul_core::chainmap::is_chain_map;
use koszul_core::complex::random::{random_complex, RandomComplexOptions};
use koszul_core::complex::{koszul, Augmentation};
use koszul_core::lift::verify_cor43;
use koszul_core::ring::{FieldSpec, RingSpec};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    /// `K_r(1)` plus random summands, with generators shuffled: the
    /// factorization exists and every bound holds.
    #[test]
    fn factorization_with_extra_summands(seed in any::<u64>(), p in prop::sample::select(vec![0u64, 2]), r in 2usize..=3, w in 1u32..=2) {
        let field = if p == 0 { FieldSpec::rationals() } else { FieldSpec::prime(p) };
        let ring = RingSpec::new(field, r, w).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let k = koszul(ring, 1);
        let opts = RandomComplexOptions { max_generators: 6, ..Default::default() };
        let extra = random_complex(ring, opts, &mut rng).complex;
        let sum = k.complex().direct_sum(&extra, "x").unwrap();
        let mut perm: Vec<usize> = (0..sum.len()).collect();
        perm.shuffle(&mut rng);
        let c = sum.permuted(&perm);
        let mut values = k.augmentation().values().to_vec();
        values.resize(sum.len(), field.zero());
        let aug = Augmentation::new(field, perm.iter().map(|&i| values[i].clone()).collect());
        let rep = verify_cor43(&c, &aug, Some(1)).unwrap();
        prop_assert!(is_chain_map(&rep.alpha).is_ok());
        prop_assert!(is_chain_map(&rep.beta).is_ok());
        prop_assert!(rep.all_pass(), "{}", rep);
    }
}
