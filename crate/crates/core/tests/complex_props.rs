use koszul_core::complex::random::{random_complex, RandomComplexOptions};
use koszul_core::complex::{homology_k, koszul, tensor_quotient};
use koszul_core::ring::{FieldSpec, RingSpec};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn ring(p: u64, r: usize, w: u32) -> RingSpec {
    let field = if p == 0 { FieldSpec::rationals() } else { FieldSpec::prime(p) };
    RingSpec::new(field, r, w).unwrap()
}

#[test]
fn koszul_complexes_are_algebras() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for p in [0, 2, 3] {
        for w in 1..=2 {
            for r in 1..=4 {
                for m in 0..=2 {
                    let k = koszul(ring(p, r, w), m);
                    k.complex().ensure_valid().unwrap();
                    k.products().validate(k.complex()).unwrap();
                    for _ in 0..50 {
                        let [a, b, c] = [(); 3].map(|_| k.complex().basis_element(rng.gen_range(0..k.len())));
                        assert_eq!(k.wedge(&k.wedge(&a, &b), &c), k.wedge(&a, &k.wedge(&b, &c)));
                    }
                }
            }
        }
    }
}

#[test]
fn koszul_quotient_has_zero_boundary() {
    for r in 1..=3 {
        for m in 0..=2 {
            let k = koszul(ring(2, r, 1), m);
            let h = homology_k(tensor_quotient(k.complex(), &vec![m + 1; r]).unwrap().complex());
            assert_eq!(h.total_dim(), (1 << r) * (m as usize + 1).pow(r as u32));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn quotients_are_complexes(seed in any::<u64>(), p in prop::sample::select(vec![0u64, 2, 3]), r in 1usize..=3, w in 1u32..=2) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = random_complex(ring(p, r, w), RandomComplexOptions::default(), &mut rng).complex;
        let a: Vec<u32> = (0..r).map(|_| rng.gen_range(1..=3)).collect();
        let q = tensor_quotient(&c, &a).unwrap();
        let f = q.complex();
        for j in 0..f.len() {
            let dj = f.apply(&f.boundary_column(j).clone());
            prop_assert!(dj.is_empty(), "d^2 != 0 on cell {}", f.name(j));
        }
        let h = homology_k(f);
        prop_assert_eq!(h.total_dim() + 2 * f.boundary_rank(), f.len());
    }
}
