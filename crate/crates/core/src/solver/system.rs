//! Rational solutions of first-order systems `σ(v) = M v + Σ λ_k c_k`.
//!
//! Elimination goes through cyclic vectors. For a row vector `ℓ`, the
//! scalar `w = ℓ v` satisfies `σ(w) = (σ(ℓ) M) v + σ(ℓ) c`. Starting from a
//! unit vector `ℓ_0 = e_j` and iterating `ℓ_{k+1} = σ(ℓ_k) M` gives
//! `σ^k(w) = ℓ_k v + s_k` with `s_{k+1} = σ(ℓ_k) c + σ(s_k)`. At the first
//! dependency `ℓ_r = Σ β_k ℓ_k` this is a scalar equation of order `r` for
//! `w`. If `r = n` the `ℓ_k` are a basis and `v` is recovered directly;
//! otherwise the chain spans an invariant block, the system is put in block
//! triangular form and the second block is solved with the first block's
//! solutions as free right-hand sides.

use num_traits::{One, Zero};

use super::matrix::{rank, solve_in_span, MatrixRF};
use super::scalar::{solve_scalar, ScalarDiffEq};
use super::space::{split_directions, Solution, SolutionSpace, Status};
use super::SolverConfig;
use crate::error::{Error, Result};
use crate::num::{Rat, RatFun};
use crate::structure::DiffStructure;

/// Scalar equation obtained by eliminating along the chain of `e_j`.
#[derive(Clone, Debug, PartialEq)]
pub struct Elimination {
    pub coordinate: usize,
    /// Chain rows `ℓ_0 .. ℓ_{r-1}`.
    pub chain: Vec<Vec<RatFun>>,
    /// `s_k[i]`: contribution of `λ_i` to `σ^k(w) - ℓ_k v`, for `k < r`.
    pub offsets: Vec<Vec<RatFun>>,
    pub equation: ScalarDiffEq,
}

impl Elimination {
    pub fn order(&self) -> usize {
        self.chain.len()
    }

    pub fn is_cyclic(&self, n: usize) -> bool {
        self.chain.len() == n
    }
}

fn unit(n: usize, j: usize) -> Vec<RatFun> {
    (0..n).map(|i| if i == j { RatFun::one() } else { RatFun::zero() }).collect()
}

fn sigma_vec(ds: &DiffStructure, v: &[RatFun]) -> Vec<RatFun> {
    v.iter().map(|x| ds.sigma(x)).collect()
}

fn dot(a: &[RatFun], b: &[RatFun]) -> RatFun {
    super::matrix::dot(a, b)
}

/// Eliminates all coordinates but `w = v_j` from
/// `σ(v) = M v + Σ λ_i cs[i]`.
pub fn eliminate(
    ds: &DiffStructure,
    m: &MatrixRF,
    cs: &[Vec<RatFun>],
    fixed: &[Option<Rat>],
    j: usize,
) -> Result<Elimination> {
    let n = m.dim();
    let t = cs.len();
    let mut chain = vec![unit(n, j)];
    let mut offsets = vec![vec![RatFun::zero(); t]];
    loop {
        let last = chain.last().expect("nonempty");
        let sl = sigma_vec(ds, last);
        let next = m.vec_mul(&sl);
        let s_last = offsets.last().expect("nonempty");
        let next_s: Vec<RatFun> = (0..t).map(|i| &dot(&sl, &cs[i]) + &ds.sigma(&s_last[i])).collect();
        let beta = if chain.len() == n {
            Some(solve_in_span(&chain, &next).ok_or(Error::Invariant("chain of length n is not a basis".into()))?)
        } else {
            solve_in_span(&chain, &next)
        };
        if let Some(beta) = beta {
            // σ^r w - Σ β_k σ^k w = s_r - Σ β_k s_k
            let r = chain.len();
            let mut coeffs: Vec<RatFun> = beta.iter().map(|b| -b).collect();
            coeffs.push(RatFun::one());
            let rhs: Vec<RatFun> = (0..t)
                .map(|i| {
                    (0..r).fold(next_s[i].clone(), |acc, k| &acc - &(&beta[k] * &offsets[k][i]))
                })
                .collect();
            if beta[0].is_zero() {
                return Err(Error::SingularMatrix);
            }
            let equation = ScalarDiffEq::from_ratfuns(ds, &coeffs, &rhs)?.with_fixed(fixed.to_vec())?;
            return Ok(Elimination { coordinate: j, chain, offsets, equation });
        }
        chain.push(next);
        offsets.push(next_s);
    }
}

/// `σ^k(w) - Σ_i λ_i s_k[i]` for `k < r`: the chain coordinates `ℓ_k v`.
fn chain_values(ds: &DiffStructure, el: &Elimination, sol: &Solution<RatFun>) -> Vec<RatFun> {
    let mut out = Vec::with_capacity(el.order());
    let mut s = sol.y.clone();
    for k in 0..el.order() {
        if k > 0 {
            s = ds.sigma(&s);
        }
        let off = sol
            .lambda
            .iter()
            .zip(&el.offsets[k])
            .filter(|(l, _)| !l.is_zero())
            .fold(RatFun::zero(), |acc, (l, o)| &acc + &o.scale(l));
        out.push(&s - &off);
    }
    out
}

fn check(ds: &DiffStructure, m: &MatrixRF, cs: &[Vec<RatFun>], sol: &Solution<Vec<RatFun>>) -> bool {
    let lhs = sigma_vec(ds, &sol.y);
    let mut rhs = m.mul_vec(&sol.y);
    for (l, c) in sol.lambda.iter().zip(cs) {
        if !l.is_zero() {
            rhs = rhs.iter().zip(c).map(|(a, b)| a + &b.scale(l)).collect();
        }
    }
    lhs == rhs
}

/// All rational solutions of `σ(v) = M v + c`.
pub fn solve_system(
    ds: &DiffStructure,
    m: &MatrixRF,
    c: &[RatFun],
    cfg: &SolverConfig,
) -> Result<SolutionSpace<Vec<RatFun>>> {
    solve_system_param(ds, m, &[c.to_vec()], &[Some(Rat::one())], cfg)
}

/// All solutions `(v, λ)` of `σ(v) = M v + Σ λ_i cs[i]` with the given
/// `λ` constraints.
pub fn solve_system_param(
    ds: &DiffStructure,
    m: &MatrixRF,
    cs: &[Vec<RatFun>],
    fixed: &[Option<Rat>],
    cfg: &SolverConfig,
) -> Result<SolutionSpace<Vec<RatFun>>> {
    let n = m.dim();
    if cs.iter().any(|c| c.len() != n) || fixed.len() != cs.len() {
        return Err(Error::Precondition("system right-hand side has the wrong shape".into()));
    }
    if m.det().is_zero() {
        return Err(Error::SingularMatrix);
    }
    let t = cs.len();

    // Lowest index with a cyclic chain, else index 0 with block splitting.
    let mut chosen = None;
    for j in 0..n {
        let el = eliminate(ds, m, cs, fixed, j)?;
        if el.is_cyclic(n) {
            chosen = Some(el);
            break;
        }
        if j == 0 {
            chosen = Some(el);
        }
    }
    let el = chosen.expect("n >= 1");
    let r = el.order();
    let scalar = solve_scalar(&el.equation, cfg)?;
    let has_fixed = fixed.iter().any(Option::is_some);

    let (particular, dirs) = if r == n {
        let lam = MatrixRF::new(el.chain.clone())?.inverse()?;
        let lift = |s: &Solution<RatFun>| Solution { y: lam.mul_vec(&chain_values(ds, &el, s)), lambda: s.lambda.clone() };
        if let Status::NoSolution(o) = &scalar.status {
            if has_fixed {
                return Ok(no_solution(o.clone()));
            }
        }
        let dirs: Vec<_> = scalar.homogeneous_basis.iter().chain(&scalar.parametric_basis).map(lift).collect();
        (scalar.particular.as_ref().map(lift), dirs)
    } else {
        if let Status::NoSolution(o) = &scalar.status {
            if has_fixed {
                return Ok(no_solution(o.clone()));
            }
        }
        split_block(ds, m, cs, &el, &scalar, cfg)?
    };

    let (homogeneous_basis, parametric_basis) = split_directions(dirs);
    let status = if has_fixed {
        match &particular {
            Some(_) => Status::Solved,
            None => Status::NoSolution(super::space::Obstruction {
                denominator: crate::num::Poly::one(),
                degree_bound: None,
                reason: "the complementary block of the system has no solution for the fixed right-hand side"
                    .into(),
            }),
        }
    } else if t == 0 || !parametric_basis.is_empty() {
        Status::Solved
    } else {
        match &scalar.status {
            Status::NoSolution(o) => Status::NoSolution(o.clone()),
            Status::Solved => Status::NoSolution(super::space::Obstruction {
                denominator: crate::num::Poly::one(),
                degree_bound: None,
                reason: "only the trivial combination λ = 0 of the right-hand sides is attainable".into(),
            }),
        }
    };
    let space = SolutionSpace { particular, homogeneous_basis, parametric_basis, status };
    for s in space.elements() {
        if !check(ds, m, cs, s) {
            return Err(Error::Invariant("system solution failed substitution".into()));
        }
    }
    Ok(space)
}

fn no_solution(o: super::space::Obstruction) -> SolutionSpace<Vec<RatFun>> {
    SolutionSpace {
        particular: None,
        homogeneous_basis: Vec::new(),
        parametric_basis: Vec::new(),
        status: Status::NoSolution(o),
    }
}

type Split = (Option<Solution<Vec<RatFun>>>, Vec<Solution<Vec<RatFun>>>);

/// Non-cyclic case: complete the chain to a basis `T`, pass to
/// `v' = T v`, whose system is block lower triangular, and solve the second
/// block with the first block's solutions as right-hand sides.
fn split_block(
    ds: &DiffStructure,
    m: &MatrixRF,
    cs: &[Vec<RatFun>],
    el: &Elimination,
    scalar: &SolutionSpace<RatFun>,
    cfg: &SolverConfig,
) -> Result<Split> {
    let n = m.dim();
    let r = el.order();
    let mut rows = el.chain.clone();
    for i in 0..n {
        if rows.len() == n {
            break;
        }
        let mut trial = rows.clone();
        trial.push(unit(n, i));
        if rank(&trial) == trial.len() {
            rows = trial;
        }
    }
    let tm = MatrixRF::new(rows)?;
    let tinv = tm.inverse()?;
    let st = tm.map(|x| ds.sigma(x));
    let mp = st.mul(m).mul(&tinv);
    let csp: Vec<Vec<RatFun>> = cs.iter().map(|c| st.mul_vec(c)).collect();

    let m22 = MatrixRF::new(mp.block(r..n, r..n))?;
    let m21 = mp.block(r..n, 0..r);
    // Right-hand side contributed by one first-block solution.
    let feed = |s: &Solution<RatFun>| -> (Vec<RatFun>, Vec<RatFun>) {
        let v1 = chain_values(ds, el, s);
        let mut g: Vec<RatFun> = m21.iter().map(|row| dot(row, &v1)).collect();
        for (l, c) in s.lambda.iter().zip(&csp) {
            if !l.is_zero() {
                g = g.iter().zip(&c[r..]).map(|(a, b)| a + &b.scale(l)).collect();
            }
        }
        (v1, g)
    };

    let mut sources: Vec<&Solution<RatFun>> = Vec::new();
    let mut sub_fixed = Vec::new();
    if let Some(p) = &scalar.particular {
        sources.push(p);
        sub_fixed.push(Some(Rat::one()));
    }
    for d in scalar.homogeneous_basis.iter().chain(&scalar.parametric_basis) {
        sources.push(d);
        sub_fixed.push(None);
    }
    let fed: Vec<(Vec<RatFun>, Vec<RatFun>)> = sources.iter().map(|s| feed(s)).collect();
    let sub_cs: Vec<Vec<RatFun>> = fed.iter().map(|(_, g)| g.clone()).collect();
    let sub = solve_system_param(ds, &m22, &sub_cs, &sub_fixed, cfg)?;
    if sub_fixed.first() == Some(&Some(Rat::one())) && sub.particular.is_none() {
        return Ok((None, Vec::new()));
    }

    let assemble = |s: &Solution<Vec<RatFun>>| -> Solution<Vec<RatFun>> {
        let mut v1 = vec![RatFun::zero(); r];
        let mut lambda = vec![Rat::zero(); cs.len()];
        for (mu, (src, (fv1, _))) in s.lambda.iter().zip(sources.iter().zip(&fed)) {
            if mu.is_zero() {
                continue;
            }
            for (a, b) in v1.iter_mut().zip(fv1) {
                *a = &*a + &b.scale(mu);
            }
            for (a, b) in lambda.iter_mut().zip(&src.lambda) {
                *a += mu * b;
            }
        }
        let mut vp = v1;
        vp.extend(s.y.iter().cloned());
        Solution { y: tinv.mul_vec(&vp), lambda }
    };
    let particular = sub.particular.as_ref().map(assemble);
    let dirs = sub.homogeneous_basis.iter().chain(&sub.parametric_basis).map(assemble).collect();
    Ok((particular, dirs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::rat::int;

    fn c(v: i64) -> RatFun {
        RatFun::constant(int(v))
    }

    fn cfg() -> SolverConfig {
        SolverConfig::default()
    }

    #[test]
    fn identity_system_has_constant_solutions() {
        let s = DiffStructure::shift();
        let sol = solve_system(&s, &MatrixRF::identity(2), &[c(0), c(0)], &cfg()).unwrap();
        assert!(sol.is_solved());
        assert_eq!(sol.homogeneous_dim(), 2);
        for b in &sol.homogeneous_basis {
            assert!(b.y.iter().all(|e| e.as_constant().is_some()));
        }
    }

    #[test]
    fn diagonal_growth_has_no_rational_solutions() {
        let s = DiffStructure::shift();
        let m = MatrixRF::new(vec![vec![c(2), c(0)], vec![c(0), c(3)]]).unwrap();
        let sol = solve_system(&s, &m, &[c(0), c(0)], &cfg()).unwrap();
        assert_eq!(sol.homogeneous_dim(), 0);
        assert!(sol.particular.unwrap().y.iter().all(RatFun::is_zero));
    }

    #[test]
    fn block_split_with_inhomogeneity() {
        // σ(v1) = v1 + 1, σ(v2) = 2 v2 + v1: v1 = x + a, v2 = -(x + a) - 1.
        let s = DiffStructure::shift();
        let m = MatrixRF::new(vec![vec![c(1), c(0)], vec![c(1), c(2)]]).unwrap();
        let sol = solve_system(&s, &m, &[c(1), c(0)], &cfg()).unwrap();
        assert!(sol.is_solved());
        assert_eq!(sol.homogeneous_dim(), 1);
        let p = sol.particular.unwrap();
        assert_eq!(&p.y[1] + &p.y[0], c(-1));
    }

    #[test]
    fn singular_matrix_is_rejected() {
        let s = DiffStructure::shift();
        let m = MatrixRF::new(vec![vec![c(1), c(1)], vec![c(1), c(1)]]).unwrap();
        assert_eq!(solve_system(&s, &m, &[c(0), c(0)], &cfg()), Err(Error::SingularMatrix));
    }

    #[test]
    fn cyclic_system_from_scalar_equation() {
        // Companion system of σ²(y) - 2σ(y) + y = 0 acting on (y, σ(y)).
        let s = DiffStructure::shift();
        let m = MatrixRF::new(vec![vec![c(0), c(1)], vec![c(-1), c(2)]]).unwrap();
        let sol = solve_system(&s, &m, &[c(0), c(0)], &cfg()).unwrap();
        assert_eq!(sol.homogeneous_dim(), 2);
    }
}
