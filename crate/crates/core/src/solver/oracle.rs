//! Independent brute-force solver used to cross-check [`solve_scalar`].
//!
//! It shares no code path with the main solver beyond exact arithmetic: the
//! denominator comes from a direct scan of `gcd(A, σ^h(B))` over a fixed
//! range of `h` with no resultants, the pole order at 0 from scanning powers
//! of `q`, and the numerator degree is a caller-supplied bound. Each basis
//! monomial is substituted symbolically.
//!
//! [`solve_scalar`]: super::solve_scalar

use num_traits::{One, Zero};

use super::scalar::{poly_column, ScalarDiffEq};
use super::space::{split_directions, Obstruction, Solution, SolutionSpace, Status};
use crate::error::{Error, Result};
use crate::num::linalg::{nullspace, solve_affine, Matrix};
use crate::num::rat::{self, Rat};
use crate::num::{Poly, RatFun};
use crate::structure::DiffStructure;

/// Largest gap scanned for the denominator.
pub const ORACLE_GAP_SCAN: i64 = 40;
/// Largest pole order at 0 scanned in the q case.
pub const ORACLE_ZERO_SCAN: i64 = 40;
pub const ORACLE_MAX_DEGREE: usize = 12;

/// A multiple of every possible solution denominator, by exhaustive gap
/// scan.
pub fn oracle_denominator(eq: &ScalarDiffEq) -> Poly {
    let ds = eq.structure();
    let e = eq.rhs_basis().iter().fold(Poly::one(), |acc, r| Poly::lcm(&acc, r.den()));
    let p: Vec<Poly> = eq.coeffs().iter().map(|c| c * &e).collect();
    let m = eq.order() as i64;
    let a = ds.orbit_part(&ds.sigma_poly(&p[m as usize], -m));
    let b = ds.orbit_part(&p[0]);
    let mut u = Poly::one();
    for h in 0..=ORACLE_GAP_SCAN {
        let d = Poly::gcd(&a, &ds.sigma_poly(&b, h));
        if d.is_constant() {
            continue;
        }
        for i in 0..=h {
            u = &u * &ds.sigma_poly(&d, -i);
        }
    }
    if let DiffStructure::QDilation(q) = ds {
        let mu = p.iter().filter_map(Poly::x_valuation).min().unwrap_or(0);
        let chi_at = |t: &Rat| {
            p.iter()
                .enumerate()
                .filter(|(_, pi)| pi.x_valuation() == Some(mu))
                .fold(Rat::zero(), |acc, (i, pi)| acc + pi.coeff(mu) * rat::pow(t, i as i64))
        };
        let mut order = mu as i64;
        for v in 1..=ORACLE_ZERO_SCAN {
            if chi_at(&rat::pow(q, -v)).is_zero() {
                order = order.max(v);
            }
        }
        u = &u * &Poly::monomial(Rat::one(), order as usize);
    }
    u.monic()
}

/// Solution space of `eq` within `y = N / u`, `u` from
/// [`oracle_denominator`] and `deg N <= deg_bound + deg u`.
pub fn brute_force_oracle(eq: &ScalarDiffEq, deg_bound: usize) -> Result<SolutionSpace<RatFun>> {
    if deg_bound > ORACLE_MAX_DEGREE {
        return Err(Error::Precondition(format!("oracle degree bound {deg_bound} > {ORACLE_MAX_DEGREE}")));
    }
    let u = oracle_denominator(eq);
    let nz = deg_bound + u.degree().unwrap_or(0) + 1;
    let t = eq.rhs_basis().len();
    let free: Vec<usize> = (0..t).filter(|&k| eq.lambda_fixed()[k].is_none()).collect();

    // Clear all denominators with D = lcm(σ^i(u), den r_k).
    let ds = eq.structure();
    let shifted_u: Vec<Poly> = (0..=eq.order() as i64).map(|i| ds.sigma_poly(&u, i)).collect();
    let common = shifted_u
        .iter()
        .chain(eq.rhs_basis().iter().map(RatFun::den))
        .fold(Poly::one(), |acc, d| Poly::lcm(&acc, d));
    let cofactor = |d: &Poly| common.checked_div(d).expect("lcm is a multiple");
    let weights: Vec<Poly> = eq.coeffs().iter().zip(&shifted_u).map(|(c, su)| c * &cofactor(su)).collect();
    let cleared_rhs: Vec<Poly> = eq.rhs_basis().iter().map(|r| r.num() * &cofactor(r.den())).collect();
    let mut cols: Vec<Poly> = (0..nz)
        .map(|j| {
            let xj = Poly::monomial(Rat::one(), j);
            weights
                .iter()
                .enumerate()
                .fold(Poly::zero(), |acc, (i, w)| &acc + &(w * &ds.sigma_poly(&xj, i as i64)))
        })
        .collect();
    for &k in &free {
        cols.push(-&cleared_rhs[k]);
    }
    let target = eq
        .lambda_fixed()
        .iter()
        .zip(&cleared_rhs)
        .filter_map(|(f, r)| f.as_ref().map(|v| r.scale(v)))
        .fold(Poly::zero(), |acc, r| &acc + &r);
    let rows = cols.iter().chain(std::iter::once(&target)).map(|c| c.coeffs().len()).max().unwrap_or(0);
    let colv: Vec<Vec<Rat>> = cols.iter().map(|c| poly_column(c, rows)).collect();
    let mat: Matrix = (0..rows).map(|r| colv.iter().map(|c| c[r].clone()).collect()).collect();
    let ncols = cols.len();

    let to_solution = |v: &[Rat], fixed: bool| {
        let y = RatFun::new(Poly::from_coeffs(v[..nz].to_vec()), u.clone()).expect("u is nonzero");
        let mut lambda = vec![Rat::zero(); t];
        for (i, &k) in free.iter().enumerate() {
            lambda[k] = v[nz + i].clone();
        }
        if fixed {
            for (k, f) in eq.lambda_fixed().iter().enumerate() {
                if let Some(f) = f {
                    lambda[k] = f.clone();
                }
            }
        }
        Solution { y, lambda }
    };
    let obstruction = Obstruction {
        denominator: u.clone(),
        degree_bound: Some(nz - 1),
        reason: "no solution within the oracle ansatz".into(),
    };
    let has_fixed = eq.lambda_fixed().iter().any(Option::is_some);
    let (particular, dirs) = if has_fixed {
        match solve_affine(&mat, &poly_column(&target, rows), ncols) {
            Some((x, ns)) => (Some(to_solution(&x, true)), ns),
            None => {
                return Ok(SolutionSpace {
                    particular: None,
                    homogeneous_basis: Vec::new(),
                    parametric_basis: Vec::new(),
                    status: Status::NoSolution(obstruction),
                })
            }
        }
    } else {
        (None, nullspace(&mat, ncols))
    };
    let (homogeneous_basis, parametric_basis) =
        split_directions(dirs.iter().map(|v| to_solution(v, false)).collect());
    let status = if has_fixed || t == 0 || !parametric_basis.is_empty() {
        Status::Solved
    } else {
        Status::NoSolution(obstruction)
    };
    Ok(SolutionSpace { particular, homogeneous_basis, parametric_basis, status })
}
