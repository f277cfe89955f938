//! Affine spaces of rational solutions `(y, λ)`.

use std::fmt;

use num_traits::Zero;

use crate::num::{Poly, Rat, RatFun};

/// Values a solver can return: rational functions or vectors of them.
pub trait SolValue: Clone + fmt::Debug + PartialEq {
    fn zero_like(&self) -> Self;
    fn add(&self, other: &Self) -> Self;
    fn scale(&self, c: &Rat) -> Self;
    fn is_zero(&self) -> bool;
}

impl SolValue for RatFun {
    fn zero_like(&self) -> Self {
        RatFun::zero()
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn scale(&self, c: &Rat) -> Self {
        RatFun::scale(self, c)
    }
    fn is_zero(&self) -> bool {
        RatFun::is_zero(self)
    }
}

impl SolValue for Vec<RatFun> {
    fn zero_like(&self) -> Self {
        vec![RatFun::zero(); self.len()]
    }
    fn add(&self, other: &Self) -> Self {
        self.iter().zip(other).map(|(a, b)| a + b).collect()
    }
    fn scale(&self, c: &Rat) -> Self {
        self.iter().map(|a| a.scale(c)).collect()
    }
    fn is_zero(&self) -> bool {
        self.iter().all(RatFun::is_zero)
    }
}

/// A solution `y` together with the values of the rhs parameters `λ`.
#[derive(Clone, Debug, PartialEq)]
pub struct Solution<Y> {
    pub y: Y,
    pub lambda: Vec<Rat>,
}

impl<Y: SolValue> Solution<Y> {
    pub fn add(&self, other: &Self) -> Self {
        Solution {
            y: self.y.add(&other.y),
            lambda: self.lambda.iter().zip(&other.lambda).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn scale(&self, c: &Rat) -> Self {
        Solution { y: self.y.scale(c), lambda: self.lambda.iter().map(|a| a * c).collect() }
    }

    pub fn lambda_is_zero(&self) -> bool {
        self.lambda.iter().all(Zero::is_zero)
    }
}

/// Why no admissible solution exists.
#[derive(Clone, Debug, PartialEq)]
pub struct Obstruction {
    /// Universal denominator used for the ansatz.
    pub denominator: Poly,
    /// Certified bound on the numerator degree; `None` if only `z = 0` fits.
    pub degree_bound: Option<usize>,
    pub reason: String,
}

impl fmt::Display for Obstruction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let bound = self.degree_bound.map_or("-inf".to_string(), |d| d.to_string());
        write!(f, "{} (denominator {}, numerator degree <= {bound})", self.reason, self.denominator)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Status {
    Solved,
    NoSolution(Obstruction),
}

/// All solutions `(y, λ)` form `particular + span(homogeneous_basis ∪
/// parametric_basis)`.
///
/// * `homogeneous_basis`: solutions with `λ = 0`.
/// * `parametric_basis`: solutions whose free `λ` parts are linearly
///   independent; fixed `λ` entries are 0 here.
/// * `particular`: present iff some `λ` entry is fixed and the constraint is
///   attainable.
#[derive(Clone, Debug, PartialEq)]
pub struct SolutionSpace<Y> {
    pub particular: Option<Solution<Y>>,
    pub homogeneous_basis: Vec<Solution<Y>>,
    pub parametric_basis: Vec<Solution<Y>>,
    pub status: Status,
}

impl<Y: SolValue> SolutionSpace<Y> {
    pub fn is_solved(&self) -> bool {
        matches!(self.status, Status::Solved)
    }

    pub fn obstruction(&self) -> Option<&Obstruction> {
        match &self.status {
            Status::NoSolution(o) => Some(o),
            Status::Solved => None,
        }
    }

    pub fn homogeneous_dim(&self) -> usize {
        self.homogeneous_basis.len()
    }

    /// All stored elements.
    pub fn elements(&self) -> impl Iterator<Item = &Solution<Y>> {
        self.particular.iter().chain(&self.homogeneous_basis).chain(&self.parametric_basis)
    }

    /// A representative solution with the fixed `λ` values (if any) and,
    /// otherwise, some nonzero `λ` when available.
    pub fn witness(&self) -> Option<&Solution<Y>> {
        self.particular.as_ref().or_else(|| self.parametric_basis.first())
    }
}

/// Splits direction vectors into a `λ = 0` part and a part with
/// independent `λ` components, by elimination on the `λ` coordinates.
pub fn split_directions<Y: SolValue>(dirs: Vec<Solution<Y>>) -> (Vec<Solution<Y>>, Vec<Solution<Y>>) {
    let mut rows = dirs;
    let t = rows.first().map_or(0, |r| r.lambda.len());
    let mut parametric = Vec::new();
    for col in 0..t {
        let Some(p) = rows.iter().position(|r| !r.lambda[col].is_zero()) else {
            continue;
        };
        let pivot = rows.swap_remove(p);
        let pivot = pivot.scale(&pivot.lambda[col].recip());
        for r in rows.iter_mut() {
            if !r.lambda[col].is_zero() {
                let c = -r.lambda[col].clone();
                *r = r.add(&pivot.scale(&c));
            }
        }
        parametric.push(pivot);
    }
    (rows, parametric)
}
