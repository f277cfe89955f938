//! Queries and their dispatch to the core operations.

use std::fmt;
use std::time::Instant;

use diffalg_core::criteria::{
    companion_matrix, find_telescoper, group_classify_inhomog_sum, hypergeom_da_test, inhomog_da_classify,
    integrability_test, mult_dependence_test, verify_conjugate, DACertificate, DAStatus, GroupKind,
    IntegrabilityStatus, Telescoper,
};
use diffalg_core::dispersion::{
    additive_standard_decomp, dispersion, is_standard, multiplicative_standard_form, polar_dispersion,
};
use diffalg_core::num::rat::int;
use diffalg_core::solver::{
    solve_first_order_with, solve_scalar, solve_system_param, MatrixRF, ScalarDiffEq, SolValue, SolutionSpace,
    SolverConfig,
};
use diffalg_core::{DiffStructure, Error, Rat, RatFun};
use serde::{Deserialize, Deserializer, Serialize};
use serde_json::{json, Value};

use crate::parse::{parse_matrix, parse_rat, parse_ratfun, parse_vector, ParseError};
use crate::report::{self, ErrorBody, VerdictReport};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Case {
    #[default]
    Shift,
    Q,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Subcommand {
    Disp,
    StandardForm,
    MultForm,
    SolveFirstOrder,
    SolveScalar,
    SolveSystem,
    Telescope,
    DaHypergeom,
    DaInhomog,
    Integrability,
    ClassifyGroup,
}

/// One request. In batch files each line is this object in JSON, with the
/// same field names as the command-line flags (`order_bound`,
/// `degree_cap` with underscores). `a` and `rhs` accept a string or a list.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Query {
    pub subcommand: Option<Subcommand>,
    #[serde(default)]
    pub case: Case,
    #[serde(default)]
    pub q: Option<String>,
    #[serde(default)]
    pub f: Option<String>,
    #[serde(default, deserialize_with = "one_or_many")]
    pub a: Vec<String>,
    #[serde(default)]
    pub b: Option<String>,
    #[serde(default, deserialize_with = "one_or_many")]
    pub rhs: Vec<String>,
    #[serde(default)]
    pub coeffs: Option<String>,
    #[serde(default)]
    pub matrix: Option<String>,
    #[serde(default)]
    pub companion: Option<String>,
    /// Leave every right-hand-side multiplier free instead of fixing it to 1.
    #[serde(default)]
    pub free: bool,
    /// Telescope on logarithmic derivatives.
    #[serde(default)]
    pub mult: bool,
    #[serde(default)]
    pub order_bound: Option<usize>,
    #[serde(default)]
    pub degree_cap: Option<usize>,
}

fn one_or_many<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<String>, D::Error> {
    #[derive(Deserialize)]
    #[serde(untagged)]
    enum OneOrMany {
        One(String),
        Many(Vec<String>),
    }
    Ok(match OneOrMany::deserialize(d)? {
        OneOrMany::One(s) => vec![s],
        OneOrMany::Many(v) => v,
    })
}

/// Failure of a query, with its process exit code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliError {
    pub code: u8,
    pub kind: &'static str,
    pub message: String,
}

pub const EXIT_USAGE: u8 = 1;
pub const EXIT_BOUND: u8 = 2;
pub const EXIT_INTERNAL: u8 = 3;

impl CliError {
    pub fn usage(message: impl Into<String>) -> Self {
        CliError { code: EXIT_USAGE, kind: "usage_error", message: message.into() }
    }

    pub fn body(&self) -> ErrorBody {
        ErrorBody { code: self.code, kind: self.kind.to_string(), message: self.message.clone() }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let (code, kind) = match e {
            Error::BoundExceeded { .. } => (EXIT_BOUND, "bound_exceeded"),
            Error::Invariant(_) => (EXIT_INTERNAL, "internal_invariant"),
            _ => (EXIT_USAGE, "invalid_input"),
        };
        CliError { code, kind, message: e.to_string() }
    }
}

fn parse_err(field: &str, e: ParseError) -> CliError {
    CliError { code: EXIT_USAGE, kind: "parse_error", message: format!("--{field}: {e}") }
}

fn field<'a>(v: &'a Option<String>, name: &str) -> Result<&'a str, CliError> {
    v.as_deref().ok_or_else(|| CliError::usage(format!("missing --{name}")))
}

fn expr(v: &Option<String>, name: &str) -> Result<RatFun, CliError> {
    parse_ratfun(field(v, name)?).map_err(|e| parse_err(name, e))
}

fn single_a(q: &Query) -> Result<&str, CliError> {
    match q.a.as_slice() {
        [a] => Ok(a),
        [] => Err(CliError::usage("missing --a")),
        _ => Err(CliError::usage("--a given more than once")),
    }
}

fn exprs(v: &[String], name: &str) -> Result<Vec<RatFun>, CliError> {
    v.iter().map(|s| parse_ratfun(s).map_err(|e| parse_err(name, e))).collect()
}

fn structure(q: &Query) -> Result<DiffStructure, CliError> {
    match (q.case, &q.q) {
        (Case::Shift, None) => Ok(DiffStructure::shift()),
        (Case::Shift, Some(_)) => Err(CliError::usage("--q is only valid with --case q")),
        (Case::Q, None) => Err(CliError::usage("--case q requires --q")),
        (Case::Q, Some(s)) => Ok(DiffStructure::q_dilation(parse_rat(s).map_err(|e| parse_err("q", e))?)?),
    }
}

fn lambdas(q: &Query, n: usize) -> Vec<Option<Rat>> {
    vec![if q.free { None } else { Some(int(1)) }; n]
}

/// Verdict code, certificate, substitution check, notes.
type Outcome = (String, Value, bool, String);

fn solve_outcome<Y: report::EncodeValue + SolValue>(sp: &SolutionSpace<Y>, verified: bool) -> Outcome {
    let verdict = if sp.is_solved() { "SOLVED" } else { "NO_SOLUTION" };
    (verdict.into(), report::space(sp), sp.is_solved() && verified, String::new())
}

fn telescoper_value(t: &Telescoper) -> Value {
    json!({
        "operators": t.operators.iter().map(|l| report::rats(l.coeffs())).collect::<Vec<_>>(),
        "operators_text": t.operators.iter().map(|l| l.to_string()).collect::<Vec<_>>(),
        "certificate_g": report::rf(&t.certificate_g),
    })
}

fn da_value(c: &DACertificate) -> Value {
    json!({
        "f": c.f.as_ref().map(report::rf),
        "c": c.c.as_ref().map(report::rat),
        "n_or_r": c.n_or_r,
        "d": c.d.as_ref().map(report::rat),
    })
}

fn x_pow(k: i64) -> RatFun {
    RatFun::monomial(int(1), k)
}

/// Runs one query and times it.
pub fn run_query(q: &Query, default_cap: usize) -> Result<VerdictReport, CliError> {
    let start = Instant::now();
    let (verdict, certificate, substitution_verified, hypothesis_notes) = dispatch(q, default_cap)?;
    Ok(VerdictReport {
        verdict,
        certificate,
        substitution_verified,
        hypothesis_notes,
        timing_ms: start.elapsed().as_millis() as u64,
    })
}

fn dispatch(q: &Query, default_cap: usize) -> Result<Outcome, CliError> {
    let sub = q.subcommand.ok_or_else(|| CliError::usage("missing subcommand"))?;
    let ds = structure(q)?;
    let cfg = SolverConfig { degree_cap: q.degree_cap.unwrap_or(default_cap) };
    match sub {
        Subcommand::Disp => {
            let f = expr(&q.f, "f")?;
            let cert = json!({
                "polar_dispersion": polar_dispersion(&ds, &f),
                "numerator_dispersion": if f.is_zero() { 0 } else { dispersion(&ds, f.num())? },
                "standard": if f.is_zero() { Value::Null } else { Value::Bool(is_standard(&ds, &f)?) },
            });
            Ok(("DISPERSION".into(), cert, false, String::new()))
        }
        Subcommand::StandardForm => {
            let f = expr(&q.f, "f")?;
            let a = match q.a.as_slice() {
                [] => int(1),
                _ => parse_rat(single_a(q)?).map_err(|e| parse_err("a", e))?,
            };
            let dec = additive_standard_decomp(&ds, &f, &a)?;
            let cert = json!({
                "twist_a": report::rat(&dec.twist_a),
                "standard_part": report::rf(&dec.standard_part),
                "certificate_g": report::rf(&dec.certificate_g),
            });
            Ok(("STANDARD_DECOMPOSITION".into(), cert, dec.verify(&f), String::new()))
        }
        Subcommand::MultForm => {
            let f = expr(&q.f, "f")?;
            let form = multiplicative_standard_form(&ds, &f)?;
            let cert = json!({
                "standard_part": report::rf(&form.standard_part),
                "certificate_g": report::rf(&form.certificate_g),
            });
            Ok(("MULT_STANDARD_FORM".into(), cert, form.verify(&f), String::new()))
        }
        Subcommand::SolveFirstOrder => {
            let a = parse_ratfun(single_a(q)?).map_err(|e| parse_err("a", e))?;
            let rhs = exprs(&q.rhs, "rhs")?;
            let sp = solve_first_order_with(&ds, &a, &rhs, lambdas(q, rhs.len()), &cfg)?;
            let ok = sp.elements().all(|s| {
                let lhs = &ds.sigma(&s.y) - &(&a * &s.y);
                let r = s.lambda.iter().zip(&rhs).fold(RatFun::zero(), |acc, (l, r)| &acc + &r.scale(l));
                lhs == r
            });
            Ok(solve_outcome(&sp, ok))
        }
        Subcommand::SolveScalar => {
            let coeffs = parse_vector(field(&q.coeffs, "coeffs")?).map_err(|e| parse_err("coeffs", e))?;
            let rhs = exprs(&q.rhs, "rhs")?;
            let eq = ScalarDiffEq::from_ratfuns(&ds, &coeffs, &rhs)?.with_fixed(lambdas(q, rhs.len()))?;
            let sp = solve_scalar(&eq, &cfg)?;
            let ok = sp.elements().all(|s| eq.satisfied_by(s));
            Ok(solve_outcome(&sp, ok))
        }
        Subcommand::SolveSystem => {
            let m = MatrixRF::new(parse_matrix(field(&q.matrix, "matrix")?).map_err(|e| parse_err("matrix", e))?)?;
            let cs = q
                .rhs
                .iter()
                .map(|s| parse_vector(s).map_err(|e| parse_err("rhs", e)))
                .collect::<Result<Vec<_>, _>>()?;
            let sp = solve_system_param(&ds, &m, &cs, &lambdas(q, cs.len()), &cfg)?;
            let ok = sp.elements().all(|s| {
                let mut rhs = m.mul_vec(&s.y);
                for (l, c) in s.lambda.iter().zip(&cs) {
                    rhs = rhs.iter().zip(c).map(|(a, b)| a + &b.scale(l)).collect();
                }
                s.y.iter().map(|v| ds.sigma(v)).collect::<Vec<_>>() == rhs
            });
            Ok(solve_outcome(&sp, ok))
        }
        Subcommand::Telescope => {
            let fs = exprs(&q.a, "a")?;
            if fs.is_empty() {
                return Err(CliError::usage("telescope needs at least one --a"));
            }
            let s = q.order_bound.ok_or_else(|| CliError::usage("telescope requires --order-bound"))?;
            let found = if q.mult {
                mult_dependence_test(&ds, &fs, s, &cfg)?
            } else {
                find_telescoper(&ds, &fs, s, &cfg)?
            };
            let inputs: Vec<RatFun> = if q.mult {
                fs.iter().map(|b| ds.derive(b).checked_div(b).expect("nonzero after the test")).collect()
            } else {
                fs
            };
            Ok(match found {
                Some(t) => {
                    let ok = t.verify(&ds, &inputs);
                    ("TELESCOPER_FOUND".into(), telescoper_value(&t), ok, String::new())
                }
                None => (
                    "NO_TELESCOPER_UP_TO_BOUND".into(),
                    json!({ "order_bound": s }),
                    false,
                    format!("no telescoper with all operators of order <= {s}; higher orders are not excluded"),
                ),
            })
        }
        Subcommand::DaHypergeom => {
            let b = expr(&q.b, "b")?;
            let v = hypergeom_da_test(&ds, &b)?;
            let ok = match &v.certificate {
                Some(c) => {
                    let f = c.f.clone().unwrap_or_else(RatFun::one);
                    let lead = x_pow(c.n_or_r.unwrap_or(0)).scale(c.c.as_ref().expect("c is set"));
                    ds.sigma(&f).checked_div(&f).map(|r| &lead * &r == b).unwrap_or(false)
                }
                None => false,
            };
            let cert = v.certificate.as_ref().map_or(Value::Null, da_value);
            Ok((v.status.code().into(), cert, ok, v.hypothesis_notes))
        }
        Subcommand::DaInhomog => {
            let a = parse_ratfun(single_a(q)?).map_err(|e| parse_err("a", e))?;
            let b = expr(&q.b, "b")?;
            let v = inhomog_da_classify(&ds, &a, &b, &cfg)?;
            let ok = match &v.certificate {
                Some(c) => {
                    let f = c.f.clone().expect("f is set");
                    let mut val = &ds.sigma(&f) - &(&a * &f);
                    if let (Some(d), Some(r)) = (&c.d, c.n_or_r) {
                        val = &val + &x_pow(r).scale(d);
                    }
                    val == b
                }
                None => false,
            };
            let cert = v.certificate.as_ref().map_or(Value::Null, da_value);
            let ok = ok && v.status != DAStatus::DifferentiallyTranscendental;
            Ok((v.status.code().into(), cert, ok, v.hypothesis_notes))
        }
        Subcommand::Integrability => {
            let a = match (&q.matrix, &q.companion) {
                (Some(m), None) => MatrixRF::new(parse_matrix(m).map_err(|e| parse_err("matrix", e))?)?,
                (None, Some(c)) => companion_matrix(&parse_vector(c).map_err(|e| parse_err("companion", e))?)?,
                _ => return Err(CliError::usage("integrability needs exactly one of --matrix and --companion")),
            };
            let r = integrability_test(&ds, &a, &cfg)?;
            let trace: Vec<Value> = r
                .scalar_trace
                .iter()
                .map(|el| {
                    json!({
                        "coordinate": el.coordinate,
                        "order": el.order(),
                        "coeffs": el.equation.coeffs().iter().map(report::poly).collect::<Vec<_>>(),
                        "rhs": report::rfs(el.equation.rhs_basis()),
                    })
                })
                .collect();
            let (b, ok) = match &r.status {
                IntegrabilityStatus::ConstantConjugate(b) => (report::rows(b.rows()), verify_conjugate(&ds, &a, b)?),
                IntegrabilityStatus::NotConstantConjugate => (Value::Null, false),
            };
            let cert = json!({ "b": b, "scalar_trace": trace });
            Ok((r.status.code().into(), cert, ok, r.hypothesis_notes))
        }
        Subcommand::ClassifyGroup => {
            let f = expr(&q.f, "f")?;
            let g = group_classify_inhomog_sum(&ds, &f, &cfg)?;
            let cert = g.certificate.as_ref().map_or(Value::Null, |c| json!({ "h": report::rf(&c.h), "c": report::rat(&c.c) }));
            let ok = g.class != GroupKind::FullGa && g.verify(&ds, &f);
            Ok((g.class.code().into(), cert, ok, String::new()))
        }
    }
}
