//! Rational solutions of scalar linear (q-)difference equations
//! `Σ p_i σ^i(y) = Σ λ_k r_k`.
//!
//! The search is the classical one: a universal denominator `u` (Abramov's
//! gcd chain, plus a power of `x` from the indicial equation at 0 in the q
//! case), a certified bound on `deg z` for `y = z / u` from the indicial
//! equation at infinity, then one linear system over Q in the coefficients
//! of `z` and the free `λ_k`.

use num_traits::{One, Signed, ToPrimitive, Zero};

use super::space::{split_directions, Obstruction, Solution, SolutionSpace, Status};
use super::SolverConfig;
use crate::dispersion::shift_gaps;
use crate::error::{Error, Result};
use crate::num::linalg::{nullspace, solve_affine, Matrix};
use crate::num::rat::{self, int, Rat};
use crate::num::roots::{integer_roots, rational_roots};
use crate::num::{Poly, RatFun};
use crate::structure::DiffStructure;

/// `Σ_i coeffs[i] σ^i(y) = Σ_k λ_k rhs_basis[k]`; `lambda_fixed[k]` pins
/// `λ_k` to a value, `None` leaves it free.
#[derive(Clone, Debug, PartialEq)]
pub struct ScalarDiffEq {
    structure: DiffStructure,
    coeffs: Vec<Poly>,
    rhs_basis: Vec<RatFun>,
    lambda_fixed: Vec<Option<Rat>>,
}

impl ScalarDiffEq {
    /// All `λ` free. Zero coefficients at the top are dropped; zero
    /// coefficients at the bottom are removed by applying `σ^{-k}` to the
    /// whole equation, which keeps the unknown unchanged.
    pub fn new(ds: &DiffStructure, coeffs: Vec<Poly>, rhs_basis: Vec<RatFun>) -> Result<Self> {
        let Some(lo) = coeffs.iter().position(|p| !p.is_zero()) else {
            return Err(Error::ZeroInput("difference operator with all coefficients zero"));
        };
        let hi = coeffs.iter().rposition(|p| !p.is_zero()).expect("some coefficient is nonzero");
        let k = lo as i64;
        let coeffs = coeffs[lo..=hi].iter().map(|p| ds.sigma_poly(p, -k)).collect();
        let rhs_basis = rhs_basis.iter().map(|r| ds.sigma_pow(r, -k)).collect::<Vec<_>>();
        let t = rhs_basis.len();
        Ok(ScalarDiffEq { structure: ds.clone(), coeffs, rhs_basis, lambda_fixed: vec![None; t] })
    }

    /// One right-hand side with `λ = 1`.
    pub fn with_rhs(ds: &DiffStructure, coeffs: Vec<Poly>, rhs: RatFun) -> Result<Self> {
        Self::new(ds, coeffs, vec![rhs])?.with_fixed(vec![Some(Rat::one())])
    }

    /// Coefficients given as rational functions; everything is multiplied
    /// by the lcm of their denominators.
    pub fn from_ratfuns(ds: &DiffStructure, coeffs: &[RatFun], rhs_basis: &[RatFun]) -> Result<Self> {
        let l = coeffs.iter().fold(Poly::one(), |acc, c| Poly::lcm(&acc, c.den()));
        let lf = RatFun::from_poly(l.clone());
        let polys = coeffs
            .iter()
            .map(|c| c.num() * &l.checked_div(c.den()).expect("lcm is a multiple"))
            .collect();
        Self::new(ds, polys, rhs_basis.iter().map(|r| r * &lf).collect())
    }

    pub fn with_fixed(mut self, fixed: Vec<Option<Rat>>) -> Result<Self> {
        if fixed.len() != self.rhs_basis.len() {
            return Err(Error::Precondition(format!(
                "{} lambda constraints for {} right-hand sides",
                fixed.len(),
                self.rhs_basis.len()
            )));
        }
        self.lambda_fixed = fixed;
        Ok(self)
    }

    pub fn structure(&self) -> &DiffStructure {
        &self.structure
    }

    pub fn coeffs(&self) -> &[Poly] {
        &self.coeffs
    }

    pub fn rhs_basis(&self) -> &[RatFun] {
        &self.rhs_basis
    }

    pub fn lambda_fixed(&self) -> &[Option<Rat>] {
        &self.lambda_fixed
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// `Σ p_i σ^i(y)`.
    pub fn apply(&self, y: &RatFun) -> RatFun {
        let mut out = RatFun::zero();
        let mut s = y.clone();
        for (i, p) in self.coeffs.iter().enumerate() {
            if i > 0 {
                s = self.structure.sigma(&s);
            }
            if !p.is_zero() {
                out = &out + &(&s * &RatFun::from_poly(p.clone()));
            }
        }
        out
    }

    pub fn rhs_value(&self, lambda: &[Rat]) -> RatFun {
        self.rhs_basis
            .iter()
            .zip(lambda)
            .filter(|(_, l)| !l.is_zero())
            .fold(RatFun::zero(), |acc, (r, l)| &acc + &r.scale(l))
    }

    /// Exact substitution check of `(y, λ)`, ignoring the fixed values.
    pub fn satisfied_by(&self, sol: &Solution<RatFun>) -> bool {
        sol.lambda.len() == self.rhs_basis.len() && self.apply(&sol.y) == self.rhs_value(&sol.lambda)
    }

    /// Coefficients multiplied by the lcm of the rhs denominators, so that
    /// the cleared right-hand side is polynomial.
    fn cleared_coeffs(&self) -> Vec<Poly> {
        let e = self.rhs_basis.iter().fold(Poly::one(), |acc, r| Poly::lcm(&acc, r.den()));
        self.coeffs.iter().map(|p| p * &e).collect()
    }
}

/// A polynomial `u` such that every rational solution has denominator
/// dividing `u`.
pub fn universal_denominator(eq: &ScalarDiffEq) -> Poly {
    let ds = eq.structure();
    let p = eq.cleared_coeffs();
    let m = eq.order() as i64;
    let mut a = ds.orbit_part(&ds.sigma_poly(&p[m as usize], -m)).monic();
    let mut b = ds.orbit_part(&p[0]).monic();
    let mut u = Poly::one();
    for &h in shift_gaps(ds, &a, &b).iter().rev() {
        let d = Poly::gcd(&a, &ds.sigma_poly(&b, h));
        if d.is_constant() {
            continue;
        }
        a = a.checked_div(&d).expect("gcd divides");
        b = b.checked_div(&ds.sigma_poly(&d, -h)).expect("shifted gcd divides");
        for i in 0..=h {
            u = &u * &ds.sigma_poly(&d, -i);
        }
    }
    if let DiffStructure::QDilation(q) = ds {
        u = &u * &Poly::monomial(Rat::one(), pole_order_at_zero(q, &p));
    }
    u.monic()
}

/// Largest possible pole order at 0 of a solution, from the indicial
/// polynomial at 0: a term `c x^v` of lowest order gives `c χ_0(q^v)
/// x^(μ + v)` as lowest term of the left side, which must vanish unless
/// `μ + v >= 0`.
fn pole_order_at_zero(q: &Rat, p: &[Poly]) -> usize {
    let vals: Vec<Option<usize>> = p.iter().map(Poly::x_valuation).collect();
    let mu = vals.iter().flatten().min().copied().expect("some coefficient is nonzero");
    let chi = Poly::from_coeffs(
        p.iter()
            .zip(&vals)
            .map(|(pi, v)| if *v == Some(mu) { pi.coeff(mu) } else { Rat::zero() })
            .collect(),
    );
    let v_min = rational_roots(&chi)
        .iter()
        .filter_map(|t| rat::log_exact(t, q))
        .chain(std::iter::once(-(mu as i64)))
        .min()
        .expect("nonempty");
    (-v_min).max(0) as usize
}

fn falling_factorial(j: usize) -> Poly {
    (0..j).fold(Poly::one(), |acc, k| &acc * &Poly::from_coeffs(vec![int(-(k as i64)), Rat::one()]))
}

fn binomial(n: usize, k: usize) -> Rat {
    (0..k).fold(Rat::one(), |acc, i| acc * int((n - i) as i64) / int(i as i64 + 1))
}

/// Bound on `deg z` for `Σ P_i σ^i(z) = R`, where `R` ranges over the given
/// right-hand sides. `None` means no nonzero `z` is possible.
pub fn degree_bound(ds: &DiffStructure, p: &[Poly], rhs: &[Poly]) -> Option<usize> {
    let (b, indicial_max): (i64, Option<i64>) = match ds {
        DiffStructure::Shift => {
            // Σ P_i σ^i = Σ_j Q_j Δ^j with Q_j = Σ_i C(i, j) P_i, and
            // Δ^j x^d = d^(j falling) x^(d - j) + lower terms.
            let m = p.len() - 1;
            let qs: Vec<Poly> = (0..=m)
                .map(|j| (j..=m).fold(Poly::zero(), |acc, i| &acc + &p[i].scale(&binomial(i, j))))
                .collect();
            let b = qs
                .iter()
                .enumerate()
                .filter(|(_, qj)| !qj.is_zero())
                .map(|(j, qj)| qj.deg_i64() - j as i64)
                .max()
                .expect("operator is nonzero");
            let alpha = qs
                .iter()
                .enumerate()
                .filter(|(j, qj)| !qj.is_zero() && qj.deg_i64() - *j as i64 == b)
                .fold(Poly::zero(), |acc, (j, qj)| {
                    &acc + &falling_factorial(j).scale(qj.lc().expect("nonzero"))
                });
            let r = integer_roots(&alpha)
                .into_iter()
                .filter(|d| !d.is_negative())
                .filter_map(|d| d.to_i64())
                .max();
            (b, r)
        }
        DiffStructure::QDilation(q) => {
            // σ^i x^d = q^(i d) x^d, so the top term is χ_∞(q^d) x^(d + b).
            let b = p.iter().map(Poly::deg_i64).max().expect("operator is nonzero");
            let chi = Poly::from_coeffs(
                p.iter()
                    .map(|pi| if pi.deg_i64() == b { pi.lc().expect("nonzero").clone() } else { Rat::zero() })
                    .collect(),
            );
            let r = rational_roots(&chi).iter().filter_map(|t| rat::log_exact(t, q)).filter(|&d| d >= 0).max();
            (b, r)
        }
    };
    let from_rhs = rhs.iter().filter(|r| !r.is_zero()).map(|r| r.deg_i64() - b).max();
    let bound = from_rhs.into_iter().chain(indicial_max).max()?;
    (bound >= 0).then_some(bound as usize)
}

pub(crate) fn poly_column(p: &Poly, rows: usize) -> Vec<Rat> {
    (0..rows).map(|i| p.coeff(i)).collect()
}

/// Complete solution space of `eq`.
pub fn solve_scalar(eq: &ScalarDiffEq, cfg: &SolverConfig) -> Result<SolutionSpace<RatFun>> {
    let ds = eq.structure();
    let m = eq.order();
    let t = eq.rhs_basis().len();
    let u = universal_denominator(eq);

    // y = z / u. Multiply through by D = lcm(σ^i(u), den r_k).
    let shifted_u: Vec<Poly> = (0..=m as i64).map(|i| ds.sigma_poly(&u, i)).collect();
    let d = shifted_u
        .iter()
        .chain(eq.rhs_basis().iter().map(RatFun::den))
        .fold(Poly::one(), |acc, x| Poly::lcm(&acc, x));
    let big_p: Vec<Poly> = eq
        .coeffs()
        .iter()
        .zip(&shifted_u)
        .map(|(pi, su)| pi * &d.checked_div(su).expect("lcm is a multiple"))
        .collect();
    let big_r: Vec<Poly> = eq
        .rhs_basis()
        .iter()
        .map(|r| r.num() * &d.checked_div(r.den()).expect("lcm is a multiple"))
        .collect();

    let bound = degree_bound(ds, &big_p, &big_r);
    if let Some(n) = bound {
        if n > cfg.degree_cap {
            return Err(Error::BoundExceeded { needed: n, cap: cfg.degree_cap });
        }
    }
    let nz = bound.map_or(0, |n| n + 1);

    // Columns: L(x^j) for each coefficient of z, then -R_k for free λ_k.
    let mut cols: Vec<Poly> = Vec::with_capacity(nz + t);
    for j in 0..nz {
        let xj = Poly::monomial(Rat::one(), j);
        let col = big_p
            .iter()
            .enumerate()
            .fold(Poly::zero(), |acc, (i, pi)| &acc + &(pi * &ds.sigma_poly(&xj, i as i64)));
        cols.push(col);
    }
    let free: Vec<usize> = (0..t).filter(|&k| eq.lambda_fixed()[k].is_none()).collect();
    for &k in &free {
        cols.push(-&big_r[k]);
    }
    let mut target = Poly::zero();
    for (k, v) in eq.lambda_fixed().iter().enumerate() {
        if let Some(v) = v {
            target = &target + &big_r[k].scale(v);
        }
    }
    let rows = cols.iter().chain(std::iter::once(&target)).map(|c| c.coeffs().len()).max().unwrap_or(0);
    let ncols = cols.len();
    let colv: Vec<Vec<Rat>> = cols.iter().map(|c| poly_column(c, rows)).collect();
    let mat: Matrix = (0..rows).map(|r| colv.iter().map(|c| c[r].clone()).collect()).collect();

    let to_solution = |v: &[Rat], fixed: bool| -> Solution<RatFun> {
        let z = Poly::from_coeffs(v[..nz].to_vec());
        let y = RatFun::new(z, u.clone()).expect("u is nonzero");
        let mut lambda = vec![Rat::zero(); t];
        for (i, &k) in free.iter().enumerate() {
            lambda[k] = v[nz + i].clone();
        }
        if fixed {
            for (k, val) in eq.lambda_fixed().iter().enumerate() {
                if let Some(val) = val {
                    lambda[k] = val.clone();
                }
            }
        }
        Solution { y, lambda }
    };
    let obstruction = |reason: &str| Obstruction {
        denominator: u.clone(),
        degree_bound: bound,
        reason: reason.to_string(),
    };

    let has_fixed = eq.lambda_fixed().iter().any(Option::is_some);
    let (particular, dirs) = if has_fixed {
        let b = poly_column(&target, rows);
        match solve_affine(&mat, &b, ncols) {
            Some((x, ns)) => (Some(to_solution(&x, true)), ns),
            None => {
                return Ok(SolutionSpace {
                    particular: None,
                    homogeneous_basis: Vec::new(),
                    parametric_basis: Vec::new(),
                    status: Status::NoSolution(obstruction(
                        "no numerator of bounded degree satisfies the equation with the fixed right-hand side",
                    )),
                });
            }
        }
    } else {
        (None, nullspace(&mat, ncols))
    };
    let dirs: Vec<Solution<RatFun>> = dirs.iter().map(|v| to_solution(v, false)).collect();
    let (homogeneous_basis, parametric_basis) = split_directions(dirs);

    let status = if has_fixed || t == 0 || !parametric_basis.is_empty() {
        Status::Solved
    } else {
        Status::NoSolution(obstruction("only the trivial combination λ = 0 of the right-hand sides is attainable"))
    };
    let space = SolutionSpace { particular, homogeneous_basis, parametric_basis, status };
    for s in space.elements() {
        let ok = if space.particular.as_ref() == Some(s) {
            eq.satisfied_by(s)
        } else {
            eq.satisfied_by(s) && eq.lambda_fixed().iter().zip(&s.lambda).all(|(f, l)| f.is_none() || l.is_zero())
        };
        if !ok {
            return Err(Error::Invariant(format!("solver output y = {} failed substitution", s.y)));
        }
    }
    Ok(space)
}

fn first_order_eq(ds: &DiffStructure, a: &RatFun, rhs_basis: &[RatFun]) -> Result<ScalarDiffEq> {
    if a.is_zero() {
        return Err(Error::ZeroInput("first-order equation with zero twist"));
    }
    // den(a) σ(g) - num(a) g = den(a) Σ λ_k r_k
    let da = RatFun::from_poly(a.den().clone());
    ScalarDiffEq::new(
        ds,
        vec![-a.num(), a.den().clone()],
        rhs_basis.iter().map(|r| r * &da).collect(),
    )
}

/// Solutions of `σ(g) - a g = Σ λ_k r_k` with every `λ_k` free.
pub fn solve_first_order(
    ds: &DiffStructure,
    a: &RatFun,
    rhs_basis: &[RatFun],
    cfg: &SolverConfig,
) -> Result<SolutionSpace<RatFun>> {
    solve_scalar(&first_order_eq(ds, a, rhs_basis)?, cfg)
}

/// As [`solve_first_order`], with some `λ_k` pinned.
pub fn solve_first_order_with(
    ds: &DiffStructure,
    a: &RatFun,
    rhs_basis: &[RatFun],
    fixed: Vec<Option<Rat>>,
    cfg: &SolverConfig,
) -> Result<SolutionSpace<RatFun>> {
    solve_scalar(&first_order_eq(ds, a, rhs_basis)?.with_fixed(fixed)?, cfg)
}

/// Decides solvability of `σ(g) - a g = b` for a constant `a` from the
/// additive standard decomposition alone: the equation is solvable iff the
/// standard part has no proper pole part and, in the q case with
/// `a = q^r`, no `x^r` term. Used to cross-check [`solve_first_order`].
pub fn first_order_solvable_by_decomposition(ds: &DiffStructure, a: &Rat, b: &RatFun) -> Result<bool> {
    let dec = crate::dispersion::additive_standard_decomp(ds, b, a)?;
    let f = dec.standard_part;
    match ds {
        DiffStructure::Shift => Ok(f.is_polynomial()),
        DiffStructure::QDilation(q) => {
            let (m, rest) = f.den().strip_x();
            if !rest.is_constant() {
                return Ok(false);
            }
            let Some(r) = rat::log_exact(a, q) else {
                return Ok(true);
            };
            // f = num / (c x^m): the x^r coefficient is num[r + m] / c.
            let idx = r + m as i64;
            Ok(idx < 0 || f.num().coeff(idx as usize).is_zero())
        }
    }
}
