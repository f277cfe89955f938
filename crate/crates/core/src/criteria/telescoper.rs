//! Telescopers: constant-coefficient operators `L_i` with
//! `Σ L_i(a_i) = σ(g) - g`.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::num::RatFun;
use crate::solver::{solve_first_order, SolverConfig};
use crate::structure::{apply_op, ConstLinDiffOp, DiffStructure};

#[derive(Clone, Debug, PartialEq)]
pub struct Telescoper {
    pub operators: Vec<ConstLinDiffOp>,
    pub certificate_g: RatFun,
}

impl Telescoper {
    /// Exact check of `Σ L_i(a_i) = σ(g) - g` with some `L_i` nonzero.
    pub fn verify(&self, ds: &DiffStructure, a: &[RatFun]) -> bool {
        if self.operators.len() != a.len() || self.operators.iter().all(ConstLinDiffOp::is_zero) {
            return false;
        }
        let lhs = self
            .operators
            .iter()
            .zip(a)
            .fold(RatFun::zero(), |acc, (l, ai)| &acc + &apply_op(ds, l, ai));
        let g = &self.certificate_g;
        lhs == &ds.sigma(g) - g
    }
}

/// Searches for a telescoper with every `L_i` of order at most
/// `order_bound`. `None` only rules out telescopers up to that order.
pub fn find_telescoper(
    ds: &DiffStructure,
    a: &[RatFun],
    order_bound: usize,
    cfg: &SolverConfig,
) -> Result<Option<Telescoper>> {
    if a.is_empty() {
        return Err(Error::Precondition("find_telescoper needs at least one function".into()));
    }
    let s1 = order_bound + 1;
    let mut rhs = Vec::with_capacity(a.len() * s1);
    for ai in a {
        let mut d = ai.clone();
        for j in 0..s1 {
            if j > 0 {
                d = ds.derive(&d);
            }
            rhs.push(d.clone());
        }
    }
    let space = solve_first_order(ds, &RatFun::one(), &rhs, cfg)?;
    let Some(sol) = space.parametric_basis.first() else {
        return Ok(None);
    };
    let lead = sol.lambda.iter().find(|l| !l.is_zero()).expect("parametric element has λ != 0");
    let sol = sol.scale(&lead.recip());
    let operators = sol.lambda.chunks(s1).map(|c| ConstLinDiffOp::new(c.to_vec())).collect();
    let t = Telescoper { operators, certificate_g: sol.y };
    if !t.verify(ds, a) {
        return Err(Error::Invariant("telescoper failed verification".into()));
    }
    Ok(Some(t))
}

/// Telescoper search on the logarithmic derivatives `∂(b_i) / b_i`.
pub fn mult_dependence_test(
    ds: &DiffStructure,
    b: &[RatFun],
    order_bound: usize,
    cfg: &SolverConfig,
) -> Result<Option<Telescoper>> {
    let logs = b
        .iter()
        .map(|bi| ds.derive(bi).checked_div(bi))
        .collect::<Result<Vec<_>>>()
        .map_err(|_| Error::ZeroInput("mult_dependence_test with a zero function"))?;
    find_telescoper(ds, &logs, order_bound, cfg)
}
