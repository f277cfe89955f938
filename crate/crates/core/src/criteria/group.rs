//! Group of `σ(y) = y + f` up to the classes {0}, the ∂-constants, and all
//! constants.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::num::rat::int;
use crate::num::{Rat, RatFun};
use crate::solver::{solve_first_order_with, SolverConfig};
use crate::structure::DiffStructure;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GroupKind {
    TrivialGroup,
    ConstantsGa,
    FullGa,
}

impl GroupKind {
    pub fn code(&self) -> &'static str {
        match self {
            GroupKind::TrivialGroup => "TRIVIAL",
            GroupKind::ConstantsGa => "CONSTANTS_GA",
            GroupKind::FullGa => "FULL_GA",
        }
    }
}

/// `f = σ(h) - h + c`; `c = 0` for the trivial group.
#[derive(Clone, Debug, PartialEq)]
pub struct GroupCertificate {
    pub h: RatFun,
    pub c: Rat,
}

#[derive(Clone, Debug, PartialEq)]
pub struct GroupClass {
    pub class: GroupKind,
    pub certificate: Option<GroupCertificate>,
}

impl GroupClass {
    pub fn verify(&self, ds: &DiffStructure, f: &RatFun) -> bool {
        match (&self.class, &self.certificate) {
            (GroupKind::FullGa, None) => true,
            (GroupKind::TrivialGroup, Some(GroupCertificate { h, c })) if c.is_zero() => *f == &ds.sigma(h) - h,
            (GroupKind::ConstantsGa, Some(GroupCertificate { h, c })) if !c.is_zero() => {
                *f == &(&ds.sigma(h) - h) + &RatFun::constant(c.clone())
            }
            _ => false,
        }
    }
}

pub fn group_classify_inhomog_sum(ds: &DiffStructure, f: &RatFun, cfg: &SolverConfig) -> Result<GroupClass> {
    let one = RatFun::one();
    let exact = solve_first_order_with(ds, &one, std::slice::from_ref(f), vec![Some(int(1))], cfg)?;
    let out = if let Some(s) = exact.particular {
        GroupClass { class: GroupKind::TrivialGroup, certificate: Some(GroupCertificate { h: s.y, c: Rat::zero() }) }
    } else if ds.is_shift() {
        GroupClass { class: GroupKind::FullGa, certificate: None }
    } else {
        // σ(h) - h = f + λ, so c = -λ.
        let sol = solve_first_order_with(ds, &one, &[f.clone(), one.clone()], vec![Some(int(1)), None], cfg)?;
        match sol.particular {
            Some(s) => {
                let cert = GroupCertificate { h: s.y, c: -s.lambda[1].clone() };
                GroupClass { class: GroupKind::ConstantsGa, certificate: Some(cert) }
            }
            None => GroupClass { class: GroupKind::FullGa, certificate: None },
        }
    };
    if !out.verify(ds, f) {
        return Err(Error::Invariant("group certificate failed substitution".into()));
    }
    Ok(out)
}
