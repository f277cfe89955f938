//! Whether `σ(Y) = A Y` admits a compatible derivation matrix, i.e. a
//! rational `B` with `σ(B) = A B A⁻¹ + ∂(A) A⁻¹`.

use crate::error::{Error, Result};
use crate::num::rat::int;
use crate::num::RatFun;
use crate::solver::{eliminate, solve_system, Elimination, MatrixRF, SolverConfig};
use crate::structure::DiffStructure;

#[derive(Clone, Debug, PartialEq)]
pub enum IntegrabilityStatus {
    ConstantConjugate(MatrixRF),
    NotConstantConjugate,
}

impl IntegrabilityStatus {
    pub fn code(&self) -> &'static str {
        match self {
            IntegrabilityStatus::ConstantConjugate(_) => "CONSTANT_CONJUGATE",
            IntegrabilityStatus::NotConstantConjugate => "NOT_CONSTANT_CONJUGATE",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct IntegrabilityResult {
    pub status: IntegrabilityStatus,
    /// One elimination per entry of `B`, row-major.
    pub scalar_trace: Vec<Elimination>,
    pub hypothesis_notes: String,
}

const NOTE: &str = "a negative answer implies differential transcendence only when the σ-Galois group \
                    of σ(Y) = A·Y is SL_n; that hypothesis is not checked";

/// `A = [[0, 1, 0, ..], .., [-p_0/p_m, .., -p_{m-1}/p_m]]` acting on
/// `(y, σ(y), .., σ^{m-1}(y))`.
pub fn companion_matrix(coeffs: &[RatFun]) -> Result<MatrixRF> {
    let m = coeffs.len().checked_sub(1).filter(|&m| m > 0).ok_or_else(|| {
        Error::Precondition("companion matrix needs an equation of order at least 1".into())
    })?;
    let lead = &coeffs[m];
    if lead.is_zero() {
        return Err(Error::ZeroInput("companion matrix with zero leading coefficient"));
    }
    let mut rows = vec![vec![RatFun::zero(); m]; m];
    for (i, row) in rows.iter_mut().enumerate().take(m - 1) {
        row[i + 1] = RatFun::one();
    }
    for j in 0..m {
        rows[m - 1][j] = -&coeffs[j].checked_div(lead)?;
    }
    MatrixRF::new(rows)
}

/// `σ(B) == A B A⁻¹ + ∂(A) A⁻¹`.
pub fn verify_conjugate(ds: &DiffStructure, a: &MatrixRF, b: &MatrixRF) -> Result<bool> {
    let ainv = a.inverse()?;
    let rhs = a.mul(b).mul(&ainv).add(&a.map(|e| ds.derive(e)).mul(&ainv));
    Ok(b.map(|e| ds.sigma(e)) == rhs)
}

pub fn integrability_test(ds: &DiffStructure, a: &MatrixRF, cfg: &SolverConfig) -> Result<IntegrabilityResult> {
    let n = a.dim();
    let ainv = a.inverse()?;
    // v = vec(B) row-major; (A B A⁻¹)_ij = Σ_kl A_ik B_kl (A⁻¹)_lj.
    let idx = |i: usize, j: usize| i * n + j;
    let mut m = MatrixRF::zero(n * n);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    m.set(idx(i, j), idx(k, l), a.get(i, k) * ainv.get(l, j));
                }
            }
        }
    }
    let c_mat = a.map(|e| ds.derive(e)).mul(&ainv);
    let c: Vec<RatFun> = (0..n * n).map(|p| c_mat.get(p / n, p % n).clone()).collect();

    let scalar_trace = (0..n * n)
        .map(|j| eliminate(ds, &m, std::slice::from_ref(&c), &[Some(int(1))], j))
        .collect::<Result<Vec<_>>>()?;
    let space = solve_system(ds, &m, &c, cfg)?;
    let status = match space.particular {
        Some(sol) => {
            let rows = sol.y.chunks(n).map(<[RatFun]>::to_vec).collect();
            let b = MatrixRF::new(rows)?;
            if !verify_conjugate(ds, a, &b)? {
                return Err(Error::Invariant("integrability certificate failed substitution".into()));
            }
            IntegrabilityStatus::ConstantConjugate(b)
        }
        None => IntegrabilityStatus::NotConstantConjugate,
    };
    Ok(IntegrabilityResult { status, scalar_trace, hypothesis_notes: NOTE.into() })
}
