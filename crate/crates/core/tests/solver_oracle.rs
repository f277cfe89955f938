//! The main solver against the brute-force oracle on random instances.

use diffalg_core::solver::{
    brute_force_oracle, solve_scalar, universal_denominator, SolverConfig,
};
use diffalg_core::testing;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn solver_agrees_with_oracle_on_random_instances() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0001);
    let cfg = SolverConfig::default();
    let mut checked = 0;
    let mut solved = 0;
    while checked < 300 {
        let shift = rng.gen_bool(0.5);
        let ds = testing::structure(&mut rng, shift);
        let eq = testing::scalar_instance(&mut rng, &ds);
        let ours = solve_scalar(&eq, &cfg).unwrap();
        // The oracle only searches numerators of bounded degree.
        let too_big = ours.elements().any(|s| s.y.num().degree().unwrap_or(0) > 8);
        if too_big {
            continue;
        }
        let theirs = brute_force_oracle(&eq, 8).unwrap();
        assert_eq!(ours.is_solved(), theirs.is_solved(), "{eq:?}\nours: {ours:?}\ntheirs: {theirs:?}");
        assert_eq!(ours.homogeneous_dim(), theirs.homogeneous_dim(), "{eq:?}");
        assert_eq!(ours.parametric_basis.len(), theirs.parametric_basis.len(), "{eq:?}");
        let u = universal_denominator(&eq);
        for s in ours.elements() {
            assert!(eq.satisfied_by(s));
            assert!(u.rem(s.y.den()).is_zero(), "den {} does not divide u = {u}", s.y.den());
        }
        solved += ours.is_solved() as usize;
        checked += 1;
    }
    assert!(solved > 50 && solved < 300, "degenerate corpus: {solved} solved");
}
