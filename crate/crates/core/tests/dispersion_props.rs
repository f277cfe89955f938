//! Standard forms and polar dispersion on random inputs in both structures.

use diffalg_core::dispersion::{
    additive_standard_decomp, dispersion, is_standard, multiplicative_standard_form, polar_dispersion,
};
use diffalg_core::num::rat::int;
use diffalg_core::testing;
use diffalg_core::{DiffStructure, Poly, RatFun};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn structures(rng: &mut ChaCha8Rng) -> [DiffStructure; 2] {
    [DiffStructure::shift(), testing::structure(rng, false)]
}

#[test]
fn standard_decompositions_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0612);
    for shift in [true, false] {
        for _ in 0..200 {
            let ds = testing::structure(&mut rng, shift);
            let f = testing::ratfun(&mut rng, 3, 4);
            let a = testing::nonzero_small_rat(&mut rng, 3);
            let dec = additive_standard_decomp(&ds, &f, &a).unwrap();
            assert!(dec.verify(&f), "{ds}: f = {f}, a = {a}");
            assert_eq!(polar_dispersion(&ds, &dec.standard_part), 0);

            if f.is_zero() {
                continue;
            }
            let form = multiplicative_standard_form(&ds, &f).unwrap();
            assert!(form.verify(&f), "{ds}: f = {f}");
            assert!(is_standard(&ds, &form.standard_part).unwrap());
        }
    }
}

#[test]
fn images_of_twisted_difference_have_positive_polar_dispersion() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0613);
    for _ in 0..200 {
        for ds in structures(&mut rng) {
            let f = testing::ratfun_with_pole(&mut rng, &ds);
            let a = testing::nonzero_small_rat(&mut rng, 3);
            let image = &ds.sigma(&f) - &f.scale(&a);
            assert!(polar_dispersion(&ds, &image) >= 1, "{ds}: f = {f}, a = {a}");
        }
    }
}

fn small_poly() -> impl Strategy<Value = Poly> {
    prop::collection::vec(-4i64..=4, 2..5)
        .prop_map(|c| Poly::from_i64s(&c))
        .prop_filter("nonconstant", |p| !p.is_constant())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn shifted_product_has_dispersion_at_least_k(p in small_poly(), k in 1i64..=5) {
        let ds = DiffStructure::shift();
        let prod = &p * &ds.sigma_poly(&p, k);
        prop_assert!(dispersion(&ds, &prod).unwrap() >= k as usize);
    }

    #[test]
    fn dilated_product_has_dispersion_at_least_k(p in small_poly(), k in 1i64..=5, qi in 0usize..3) {
        let ds = DiffStructure::q_dilation([int(2), int(-3), int(1) / int(2)][qi].clone()).unwrap();
        prop_assume!(!ds.orbit_part(&p).is_constant());
        let prod = &p * &ds.sigma_poly(&p, k);
        prop_assert!(dispersion(&ds, &prod).unwrap() >= k as usize);
    }
}

#[test]
fn zero_function_has_trivial_decomposition() {
    let ds = DiffStructure::shift();
    let dec = additive_standard_decomp(&ds, &RatFun::zero(), &int(2)).unwrap();
    assert!(dec.standard_part.is_zero() && dec.certificate_g.is_zero());
}
