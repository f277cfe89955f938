//! Dispersion, polar dispersion and the additive / multiplicative standard
//! forms.
//!
//! Both decompositions work on whole pole (or zero) blocks found by gcds of
//! shifted polynomials, never on individual roots. When the dispersion is
//! `N > 0`, `gcd(D, σ^N(D))` is exactly the part of `D` sitting over the
//! left ends of orbit chains of length `N`; those blocks are pushed one step
//! along σ^{-1} and the step is recorded in the certificate. Each pass
//! shortens every maximal chain, so the loop terminates.

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::num::rat::{self, fmt_rat, Rat};
use crate::num::resultant::{dilation_resultant, shift_resultant};
use crate::num::modp::{divides_mod, gcd_degree_mod, inv_mod, mul_mod, pow_mod, reduce_int, reduce_mod, taylor_shift_mod};
use crate::num::roots::{integer_roots, rational_roots};
use crate::num::{partial_split, Poly, RatFun};
use crate::structure::DiffStructure;

/// `f = standard_part + σ(certificate_g) - twist_a * certificate_g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StandardDecomp {
    pub structure: DiffStructure,
    pub twist_a: Rat,
    pub standard_part: RatFun,
    pub certificate_g: RatFun,
}

impl StandardDecomp {
    /// Checks the defining identity against `f` and that the standard part
    /// has polar dispersion zero.
    pub fn verify(&self, f: &RatFun) -> bool {
        let g = &self.certificate_g;
        let rhs = &(&self.standard_part + &self.structure.sigma(g)) - &g.scale(&self.twist_a);
        rhs == *f && polar_dispersion(&self.structure, &self.standard_part) == 0
    }
}

/// `f = standard_part * σ(certificate_g) / certificate_g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultStandardForm {
    pub structure: DiffStructure,
    pub standard_part: RatFun,
    pub certificate_g: RatFun,
}

impl MultStandardForm {
    pub fn verify(&self, f: &RatFun) -> bool {
        let g = &self.certificate_g;
        let Ok(ratio) = self.structure.sigma(g).checked_div(g) else {
            return false;
        };
        &self.standard_part * &ratio == *f
            && is_standard(&self.structure, &self.standard_part).unwrap_or(false)
    }
}

/// Nonnegative `l` with `gcd(a, σ^l(b))` nonconstant, i.e. `a` has a root
/// `α` with `α + l` (shift) or `q^l α` (q case) a root of `b`. Ascending.
///
/// In the q case, roots at 0 are ignored.
pub fn shift_gaps(ds: &DiffStructure, a: &Poly, b: &Poly) -> Vec<i64> {
    let mut out = signed_gaps(ds, a, b);
    out.retain(|&l| l >= 0);
    out
}

/// Signed gaps: all integers `l` with `gcd(a, σ^l(b))` nonconstant.
pub fn signed_gaps(ds: &DiffStructure, a: &Poly, b: &Poly) -> Vec<i64> {
    let a = ds.orbit_part(a).squarefree_part();
    let b = ds.orbit_part(b).squarefree_part();
    if a.is_constant() || b.is_constant() {
        return Vec::new();
    }
    let mut out = match scan_gaps(ds, &a, &b) {
        Some(gaps) => gaps,
        None => resultant_gaps(ds, &a, &b),
    };
    out.sort_unstable();
    out.dedup();
    out
}

/// Gaps from the roots of `Res_x(a(x), b(x + y))` (shift) or
/// `Res_x(a(x), b(z x))` (q case).
pub fn resultant_gaps(ds: &DiffStructure, a: &Poly, b: &Poly) -> Vec<i64> {
    let mut out: Vec<i64> = match ds {
        DiffStructure::Shift => integer_roots(&shift_resultant(a, b))
            .into_iter()
            .filter_map(|y: BigInt| y.to_i64())
            .collect(),
        DiffStructure::QDilation(q) => rational_roots(&dilation_resultant(a, b))
            .into_iter()
            .filter_map(|z| rat::log_exact(&z, q))
            .collect(),
    };
    out.sort_unstable();
    out
}

/// Longest candidate range tried before falling back to resultants.
const GAP_SCAN_LIMIT: f64 = 4096.0;
const SCAN_PRIMES: [u64; 4] = [2_147_483_647, 2_147_483_629, 2_147_483_587, 2_147_483_579];

/// Upper bound on `ln |root|` over the roots of `f` (Fujiwara), from bit
/// lengths only.
fn log_root_bound(f: &[BigInt]) -> f64 {
    let n = f.len() - 1;
    let ln2 = std::f64::consts::LN_2;
    let lc_low = (f[n].bits() as f64 - 1.0) * ln2;
    let worst = f[..n]
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, c)| (c.bits() as f64 * ln2 - lc_low) / (n - k) as f64)
        .fold(f64::NEG_INFINITY, f64::max);
    ln2 + worst
}

/// Candidate gaps from root-size bounds, filtered by a gcd over F_p and
/// confirmed exactly. `None` when the candidate range is too long.
/// Inputs are squarefree, nonconstant, and in the q case prime to `x`.
fn scan_gaps(ds: &DiffStructure, a: &Poly, b: &Poly) -> Option<Vec<i64>> {
    let (_, ai) = a.to_primitive_integer();
    let (_, bi) = b.to_primitive_integer();
    let (lo, hi) = match ds {
        DiffStructure::Shift => {
            let reach = log_root_bound(&ai).exp() + log_root_bound(&bi).exp();
            if reach.is_nan() || reach > GAP_SCAN_LIMIT {
                return None;
            }
            let r = reach.ceil() as i64 + 1;
            (-r, r)
        }
        DiffStructure::QDilation(q) => {
            let rev = |f: &[BigInt]| f.iter().rev().cloned().collect::<Vec<_>>();
            let ln_max = log_root_bound(&bi) + log_root_bound(&rev(&ai));
            let ln_min = -(log_root_bound(&ai) + log_root_bound(&rev(&bi)));
            let lq = q.numer().to_f64()?.abs().ln() - q.denom().to_f64()?.ln();
            let (x, y) = (ln_min / lq, ln_max / lq);
            let (lo, hi) = (x.min(y).floor() - 1.0, x.max(y).ceil() + 1.0);
            if (hi - lo).is_nan() || hi - lo > GAP_SCAN_LIMIT {
                return None;
            }
            (lo as i64, hi as i64)
        }
    };
    let q_parts = match ds {
        DiffStructure::Shift => None,
        DiffStructure::QDilation(q) => Some((q.numer().clone(), q.denom().clone())),
    };
    let p = *SCAN_PRIMES.iter().find(|&&p| {
        !divides_mod(p, &ai[ai.len() - 1])
            && !divides_mod(p, &bi[bi.len() - 1])
            && q_parts.as_ref().is_none_or(|(n, d)| !divides_mod(p, n) && !divides_mod(p, d))
    })?;
    let ap = reduce_mod(&ai, p);
    let bp = reduce_mod(&bi, p);
    let sigma_mod = |l: i64| -> Vec<u64> {
        match &q_parts {
            None => taylor_shift_mod(&bp, reduce_int(&BigInt::from(l), p), p),
            Some((n, d)) => {
                let qp = mul_mod(reduce_int(n, p), inv_mod(reduce_int(d, p), p), p);
                let base = if l >= 0 { qp } else { inv_mod(qp, p) };
                let ql = pow_mod(base, l.unsigned_abs(), p);
                let mut w = 1;
                bp.iter()
                    .map(|&c| {
                        let v = mul_mod(c, w, p);
                        w = mul_mod(w, ql, p);
                        v
                    })
                    .collect()
            }
        }
    };
    Some(
        (lo..=hi)
            .filter(|&l| gcd_degree_mod(&ap, &sigma_mod(l), p) > 0)
            .filter(|&l| !Poly::gcd(a, &ds.sigma_poly(b, l)).is_constant())
            .collect(),
    )
}

/// Largest nonnegative `l` such that two roots of `p` differ by `l` (shift)
/// or by the factor `q^l` (q case, nonzero roots).
pub fn dispersion(ds: &DiffStructure, p: &Poly) -> Result<usize> {
    if p.is_zero() {
        return Err(Error::ZeroInput("dispersion of the zero polynomial"));
    }
    Ok(shift_gaps(ds, p, p).last().map_or(0, |&l| l as usize))
}

/// Dispersion of the denominator; 0 for polynomials.
pub fn polar_dispersion(ds: &DiffStructure, f: &RatFun) -> usize {
    dispersion(ds, f.den()).expect("denominator is nonzero")
}

/// True iff the zeros and poles of `f` jointly have dispersion 0.
pub fn is_standard(ds: &DiffStructure, f: &RatFun) -> Result<bool> {
    if f.is_zero() {
        return Err(Error::ZeroInput("is_standard of the zero function"));
    }
    Ok(dispersion(ds, &(f.num() * f.den()))? == 0)
}

/// Squarefree polynomial whose roots are the left ends `γ` of the chains
/// `γ, ..., σ^{-n}`-partner of length `n` inside `d`.
fn chain_starts(ds: &DiffStructure, d: &Poly, n: usize) -> Poly {
    let d = ds.orbit_part(d).squarefree_part();
    Poly::gcd(&d, &ds.sigma_poly(&d, n as i64))
}

/// Splits `f` into the part that passes through the additive reduction
/// untouched (polynomial part, plus the `1/x^k` terms in the q case) and a
/// proper fraction whose denominator is prime to `x` in the q case.
fn split_passthrough(ds: &DiffStructure, f: &RatFun) -> Result<(RatFun, RatFun)> {
    let (poly, proper) = f.split_polynomial();
    let mut pass = RatFun::from_poly(poly);
    let proper = match ds {
        DiffStructure::Shift => proper,
        DiffStructure::QDilation(_) => {
            let (m, rest) = proper.den().strip_x();
            if m == 0 {
                proper
            } else {
                let xm = Poly::monomial(Rat::one(), m);
                let (at_zero, other) = partial_split(&proper, &xm, &rest)?;
                pass = &pass + &at_zero;
                other
            }
        }
    };
    Ok((pass, proper))
}

/// `f = f* + σ(g) - a g` with `pdisp(f*) = 0`, for a nonzero constant `a`.
pub fn additive_standard_decomp(ds: &DiffStructure, f: &RatFun, a: &Rat) -> Result<StandardDecomp> {
    if a.is_zero() {
        return Err(Error::Precondition("additive_standard_decomp needs a nonzero twist".into()));
    }
    let (pass, mut h) = split_passthrough(ds, f)?;
    let mut g = RatFun::zero();
    loop {
        let n = dispersion(ds, h.den())?;
        if n == 0 {
            break;
        }
        let w = chain_starts(ds, h.den(), n);
        let d1 = h.den().saturate(&w);
        let d2 = h.den().checked_div(&d1).expect("saturated block divides");
        let (h1, h2) = partial_split(&h, &d1, &d2)?;
        // h1 = σ(t) - a t + a t' with t = σ^{-1}(h1): the block moves one
        // step and its image lands in g.
        let t = ds.sigma_inv(&h1);
        h = &h2 + &t.scale(a);
        g = &g + &t;
    }
    let out = StandardDecomp {
        structure: ds.clone(),
        twist_a: a.clone(),
        standard_part: &pass + &h,
        certificate_g: g,
    };
    if !out.verify(f) {
        return Err(Error::Invariant(format!(
            "additive standard decomposition of {f} with a = {} failed verification",
            fmt_rat(a)
        )));
    }
    Ok(out)
}

fn monic_normalized(g: &RatFun) -> RatFun {
    RatFun::new(g.num().monic(), g.den().clone()).expect("nonzero denominator")
}

/// `f = f~ σ(g~) / g~` with `f~` standard. `g~` has monic numerator and
/// denominator.
pub fn multiplicative_standard_form(ds: &DiffStructure, f: &RatFun) -> Result<MultStandardForm> {
    if f.is_zero() {
        return Err(Error::ZeroInput("multiplicative standard form of zero"));
    }
    let mut cur = f.clone();
    let mut g = RatFun::one();
    loop {
        let support = cur.num() * cur.den();
        let n = dispersion(ds, &support)?;
        if n == 0 {
            break;
        }
        let w = chain_starts(ds, &support, n);
        let p1 = ds.orbit_part(cur.num()).saturate(&w);
        let q1 = ds.orbit_part(cur.den()).saturate(&w);
        let r = RatFun::new(p1, q1)?;
        // r = σ(t) / t with t = σ^{-1}(r), so f = (f t / r) σ(t) / t.
        let t = ds.sigma_inv(&r);
        cur = &(&cur * &t) / &r;
        g = &g * &t;
    }
    let out = MultStandardForm {
        structure: ds.clone(),
        standard_part: cur,
        certificate_g: monic_normalized(&g),
    };
    if !out.verify(f) {
        return Err(Error::Invariant(format!("multiplicative standard form of {f} failed verification")));
    }
    Ok(out)
}
