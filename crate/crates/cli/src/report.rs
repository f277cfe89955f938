//! JSON encoding of verdicts and errors. Field order is fixed by the
//! struct declarations and by insertion order in certificate objects.

use diffalg_core::num::rat::{fmt_rat, Rat};
use diffalg_core::solver::{Obstruction, Solution, SolutionSpace, Status};
use diffalg_core::{Poly, RatFun};
use serde::Serialize;
use serde_json::{json, Value};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerdictReport {
    pub verdict: String,
    pub certificate: Value,
    pub substitution_verified: bool,
    pub hypothesis_notes: String,
    pub timing_ms: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ErrorBody {
    pub code: u8,
    pub kind: String,
    pub message: String,
}

/// Error object: `{"error": {...}}`, or `{"line": n, "error": {...}}` in
/// batch mode.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ErrorReport {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub line: Option<usize>,
    pub error: ErrorBody,
}

pub fn rf(f: &RatFun) -> Value {
    Value::String(f.to_string())
}

pub fn poly(p: &Poly) -> Value {
    Value::String(p.to_string())
}

pub fn rat(r: &Rat) -> Value {
    Value::String(fmt_rat(r))
}

pub fn rats(rs: &[Rat]) -> Value {
    Value::Array(rs.iter().map(rat).collect())
}

pub fn rfs(fs: &[RatFun]) -> Value {
    Value::Array(fs.iter().map(rf).collect())
}

pub fn rows(m: &[Vec<RatFun>]) -> Value {
    Value::Array(m.iter().map(|r| rfs(r)).collect())
}

pub trait EncodeValue {
    fn encode(&self) -> Value;
}

impl EncodeValue for RatFun {
    fn encode(&self) -> Value {
        rf(self)
    }
}

impl EncodeValue for Vec<RatFun> {
    fn encode(&self) -> Value {
        rfs(self)
    }
}

pub fn solution<Y: EncodeValue>(s: &Solution<Y>) -> Value {
    json!({ "y": s.y.encode(), "lambda": rats(&s.lambda) })
}

pub fn obstruction(o: &Obstruction) -> Value {
    json!({
        "denominator": poly(&o.denominator),
        "degree_bound": o.degree_bound,
        "reason": o.reason,
    })
}

pub fn space<Y: EncodeValue>(sp: &SolutionSpace<Y>) -> Value {
    match &sp.status {
        Status::Solved => json!({
            "particular": sp.particular.as_ref().map(solution),
            "homogeneous_basis": sp.homogeneous_basis.iter().map(solution).collect::<Vec<_>>(),
            "parametric_basis": sp.parametric_basis.iter().map(solution).collect::<Vec<_>>(),
        }),
        Status::NoSolution(o) => json!({ "obstruction": obstruction(o) }),
    }
}
