//! Invariance properties of the criteria on random inputs.

use diffalg_core::criteria::{find_telescoper, hypergeom_da_test, inhomog_da_classify, DAStatus};
use diffalg_core::dispersion::is_standard;
use diffalg_core::num::rat::int;
use diffalg_core::solver::SolverConfig;
use diffalg_core::testing;
use diffalg_core::{DiffStructure, RatFun};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn nonzero_ratfun(rng: &mut ChaCha8Rng) -> RatFun {
    loop {
        let f = testing::ratfun(rng, 2, 2);
        if !f.is_zero() {
            return f;
        }
    }
}

#[test]
fn hypergeometric_verdict_is_gauge_invariant() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0034);
    for i in 0..60 {
        let ds = testing::structure(&mut rng, i % 2 == 0);
        let b = nonzero_ratfun(&mut rng);
        let g = nonzero_ratfun(&mut rng);
        let gauged = &b * &ds.sigma(&g).checked_div(&g).unwrap();
        let v1 = hypergeom_da_test(&ds, &b).unwrap();
        let v2 = hypergeom_da_test(&ds, &gauged).unwrap();
        assert_eq!(v1.status, v2.status, "{ds}: b = {b}, g = {g}");
    }
}

#[test]
fn hypergeometric_verdict_is_scale_invariant_in_shift_case() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0035);
    let ds = DiffStructure::shift();
    for _ in 0..60 {
        let b = nonzero_ratfun(&mut rng);
        let u = testing::nonzero_small_rat(&mut rng, 4);
        let scaled = b.scale(&u);
        if !is_standard(&ds, &scaled).unwrap() {
            continue;
        }
        assert_eq!(hypergeom_da_test(&ds, &b).unwrap().status, hypergeom_da_test(&ds, &scaled).unwrap().status);
    }
}

#[test]
fn telescoper_existence_ignores_order_and_scaling() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0032);
    let cfg = SolverConfig::default();
    for i in 0..30 {
        let ds = testing::structure(&mut rng, i % 2 == 0);
        let a1 = testing::ratfun(&mut rng, 1, 2);
        // Half the instances are planted: a2 = c ∂(a1) + σ(h) - h.
        let a2 = if rng.gen_bool(0.5) {
            let h = testing::ratfun(&mut rng, 1, 1);
            &ds.derive(&a1).scale(&testing::nonzero_small_rat(&mut rng, 3)) + &(&ds.sigma(&h) - &h)
        } else {
            testing::ratfun(&mut rng, 1, 2)
        };
        let base = find_telescoper(&ds, &[a1.clone(), a2.clone()], 1, &cfg).unwrap();
        let swapped = find_telescoper(&ds, &[a2.clone(), a1.clone()], 1, &cfg).unwrap();
        let u = testing::nonzero_small_rat(&mut rng, 3);
        let scaled = find_telescoper(&ds, &[a1.scale(&u), a2.clone()], 1, &cfg).unwrap();
        assert_eq!(base.is_some(), swapped.is_some(), "{ds}: {a1}, {a2}");
        assert_eq!(base.is_some(), scaled.is_some(), "{ds}: {a1}, {a2}");
        for (t, a) in [(&base, [a1.clone(), a2.clone()]), (&swapped, [a2.clone(), a1.clone()])] {
            if let Some(t) = t {
                assert!(t.verify(&ds, &a));
            }
        }
    }
}

#[test]
fn homogeneous_inhomogeneous_case_is_algebraic() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0038);
    let cfg = SolverConfig::default();
    for i in 0..20 {
        let ds = testing::structure(&mut rng, i % 2 == 0);
        let a = RatFun::constant(testing::nonzero_small_rat(&mut rng, 5));
        let v = inhomog_da_classify(&ds, &a, &RatFun::zero(), &cfg).unwrap();
        assert_eq!(v.status, DAStatus::DifferentiallyAlgebraic);
        let cert = v.certificate.unwrap();
        assert_eq!(cert.f, Some(RatFun::zero()));
        assert!(cert.d.is_none_or(|d| d == int(0)));
    }
}
