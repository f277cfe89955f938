//! Seeded random instance generators for the property and acceptance
//! suites. Enabled by the `testing` feature.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::num::rat::{int, ratio};
use crate::num::{Poly, Rat, RatFun};
use crate::solver::ScalarDiffEq;
use crate::structure::DiffStructure;

/// q values used by the generators: both |q| > 1 and |q| < 1, both signs.
pub fn sample_q<R: Rng>(rng: &mut R) -> Rat {
    let qs = [ratio(2, 1), ratio(3, 1), ratio(1, 2), ratio(-2, 1), ratio(3, 2), ratio(1, 4), ratio(-1, 3)];
    qs.choose(rng).expect("nonempty").clone()
}

pub fn structure<R: Rng>(rng: &mut R, shift: bool) -> DiffStructure {
    if shift {
        DiffStructure::shift()
    } else {
        DiffStructure::q_dilation(sample_q(rng)).expect("valid q")
    }
}

pub fn small_rat<R: Rng>(rng: &mut R, bound: i64) -> Rat {
    ratio(rng.gen_range(-bound..=bound), rng.gen_range(1..=3))
}

pub fn nonzero_small_rat<R: Rng>(rng: &mut R, bound: i64) -> Rat {
    loop {
        let r = small_rat(rng, bound);
        if r != Rat::from_integer(0.into()) {
            return r;
        }
    }
}

/// Integer coefficients in `[-bound, bound]`, degree at most `deg`.
pub fn poly<R: Rng>(rng: &mut R, deg: usize, bound: i64) -> Poly {
    let d = rng.gen_range(0..=deg);
    Poly::from_coeffs((0..=d).map(|_| int(rng.gen_range(-bound..=bound))).collect())
}

pub fn nonzero_poly<R: Rng>(rng: &mut R, deg: usize, bound: i64) -> Poly {
    loop {
        let p = poly(rng, deg, bound);
        if !p.is_zero() {
            return p;
        }
    }
}

/// Monic product of random linear and quadratic factors with small
/// rational roots.
pub fn denominator<R: Rng>(rng: &mut R, factors: usize) -> Poly {
    let mut d = Poly::one();
    for _ in 0..factors {
        let f = if rng.gen_bool(0.8) {
            Poly::from_coeffs(vec![-small_rat(rng, 6), int(1)])
        } else {
            Poly::from_coeffs(vec![int(rng.gen_range(1..=4)), int(rng.gen_range(-2..=2)), int(1)])
        };
        d = &d * &f;
    }
    d
}

pub fn ratfun<R: Rng>(rng: &mut R, num_deg: usize, den_factors: usize) -> RatFun {
    let n = poly(rng, num_deg, 5);
    let k = rng.gen_range(0..=den_factors);
    RatFun::new(n, denominator(rng, k)).expect("monic denominator")
}

/// A rational function with at least one pole, at a nonzero point in the
/// q case.
pub fn ratfun_with_pole<R: Rng>(rng: &mut R, ds: &DiffStructure) -> RatFun {
    loop {
        let f = ratfun(rng, 3, 3);
        let poles = ds.orbit_part(f.den());
        if !poles.is_constant() {
            return f;
        }
    }
}

/// Random scalar equation of order 1 or 2 with coefficient degree <= 3
/// and one of: no right-hand side, a fixed manufactured right-hand side
/// (solvable by construction), a fixed random right-hand side, or free
/// parameters.
pub fn scalar_instance<R: Rng>(rng: &mut R, ds: &DiffStructure) -> ScalarDiffEq {
    let m = rng.gen_range(1..=2);
    let coeffs: Vec<Poly> = (0..=m).map(|_| nonzero_poly(rng, 3, 3)).collect();
    let base = ScalarDiffEq::new(ds, coeffs.clone(), vec![]).expect("nonzero operator");
    match rng.gen_range(0..4) {
        0 => base,
        1 => {
            let y = ratfun(rng, 2, 2);
            let rhs = base.apply(&y);
            ScalarDiffEq::new(ds, coeffs, vec![rhs])
                .and_then(|e| e.with_fixed(vec![Some(int(1))]))
                .expect("valid instance")
        }
        2 => ScalarDiffEq::new(ds, coeffs, vec![ratfun(rng, 2, 2)])
            .and_then(|e| e.with_fixed(vec![Some(int(1))]))
            .expect("valid instance"),
        _ => {
            let y = ratfun(rng, 2, 2);
            let planted = base.apply(&y);
            let rhs = vec![planted, ratfun(rng, 2, 2)];
            ScalarDiffEq::new(ds, coeffs, rhs).expect("valid instance")
        }
    }
}
