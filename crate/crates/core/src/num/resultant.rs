//! Resultants: subresultant PRS over Z, plus the one-parameter families
//! `Res_x(A(x), B(x+y))` and `Res_x(A(x), B(z*x))` needed for gap detection.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::poly::Poly;
use super::rat::{int, Rat};
use crate::error::{Error, Result};

type IPoly = Vec<BigInt>;

fn ideg(p: &IPoly) -> usize {
    p.len() - 1
}

fn trim(p: &mut IPoly) {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

fn content(p: &IPoly) -> BigInt {
    p.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

/// Pseudo-remainder `lc(b)^(deg a - deg b + 1) * a mod b`.
pub(crate) fn prem(a: &IPoly, b: &IPoly) -> IPoly {
    let db = ideg(b);
    let lb = &b[db];
    let mut r = a.clone();
    let mut e = ideg(a) as i64 - db as i64 + 1;
    while !r.is_empty() && ideg(&r) >= db {
        let dr = ideg(&r);
        let lr = r[dr].clone();
        for c in r.iter_mut() {
            *c *= lb;
        }
        let off = dr - db;
        for (j, bj) in b.iter().enumerate() {
            r[off + j] -= &lr * bj;
        }
        trim(&mut r);
        e -= 1;
    }
    if e > 0 {
        let f = num_traits::pow(lb.clone(), e as usize);
        for c in r.iter_mut() {
            *c *= &f;
        }
    }
    r
}

/// Resultant of two nonzero integer polynomials (Collins/Brown subresultant
/// PRS, as in Cohen's Algorithm 3.3.7).
fn subresultant_int(a: &IPoly, b: &IPoly) -> BigInt {
    let (mut a, mut b) = (a.clone(), b.clone());
    let mut s = BigInt::one();
    if ideg(&a) < ideg(&b) {
        std::mem::swap(&mut a, &mut b);
        if ideg(&a) % 2 == 1 && ideg(&b) % 2 == 1 {
            s = -s;
        }
    }
    let ca = content(&a);
    let cb = content(&b);
    let t = num_traits::pow(ca.clone(), ideg(&b)) * num_traits::pow(cb.clone(), ideg(&a));
    for c in a.iter_mut() {
        *c = &*c / &ca;
    }
    for c in b.iter_mut() {
        *c = &*c / &cb;
    }
    if ideg(&b) == 0 {
        return s * t * num_traits::pow(b[0].clone(), ideg(&a));
    }
    let mut g = BigInt::one();
    let mut h = BigInt::one();
    loop {
        let delta = ideg(&a) - ideg(&b);
        if ideg(&a) % 2 == 1 && ideg(&b) % 2 == 1 {
            s = -s;
        }
        let r = prem(&a, &b);
        a = b;
        let div = &g * num_traits::pow(h.clone(), delta);
        b = r.into_iter().map(|c| c / &div).collect();
        g = a[ideg(&a)].clone();
        h = if delta == 0 {
            h
        } else {
            num_traits::pow(g.clone(), delta) / num_traits::pow(h.clone(), delta - 1)
        };
        if b.is_empty() {
            return BigInt::zero();
        }
        if ideg(&b) == 0 {
            break;
        }
    }
    let da = ideg(&a);
    let h = num_traits::pow(b[0].clone(), da) / num_traits::pow(h, da - 1);
    s * t * h
}

/// `Res_x(p, q) = lc(p)^deg(q) * prod q(roots of p)`.
pub fn poly_resultant(p: &Poly, q: &Poly) -> Result<Rat> {
    if p.is_zero() || q.is_zero() {
        return Err(Error::ZeroInput("resultant of the zero polynomial"));
    }
    let (dp, dq) = (p.degree().unwrap(), q.degree().unwrap());
    let (sp, ip) = p.to_primitive_integer();
    let (sq, iq) = q.to_primitive_integer();
    let r = subresultant_int(&ip, &iq);
    let scale = num_traits::pow(sp, dq) * num_traits::pow(sq, dp);
    Ok(Rat::from_integer(r) * scale)
}

/// Newton interpolation through `(xs[i], ys[i])`.
pub fn interpolate(xs: &[Rat], ys: &[Rat]) -> Poly {
    assert_eq!(xs.len(), ys.len());
    let n = xs.len();
    let mut c = ys.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            c[i] = (&c[i] - &c[i - 1]) / (&xs[i] - &xs[i - j]);
        }
    }
    let mut out = Poly::zero();
    for i in (0..n).rev() {
        out = &out * &Poly::from_coeffs(vec![-xs[i].clone(), Rat::one()]) + &Poly::constant(c[i].clone());
    }
    out
}

/// `R(y) = Res_x(a(x), b(x + y))` as a polynomial in `y`.
pub fn shift_resultant(a: &Poly, b: &Poly) -> Poly {
    let (da, db) = (a.degree().unwrap_or(0), b.degree().unwrap_or(0));
    let n = da * db + 1;
    let xs: Vec<Rat> = (0..n as i64).map(int).collect();
    let ys: Vec<Rat> = xs
        .iter()
        .map(|y| poly_resultant(a, &b.taylor_shift(y)).expect("nonzero inputs"))
        .collect();
    interpolate(&xs, &ys)
}

/// `R(z) = Res_x(a(x), b(z * x))` as a polynomial in `z`. Sample points
/// avoid `z = 0`, where `b(z x)` drops degree.
pub fn dilation_resultant(a: &Poly, b: &Poly) -> Poly {
    let (da, db) = (a.degree().unwrap_or(0), b.degree().unwrap_or(0));
    let n = da * db + 1;
    let xs: Vec<Rat> = (1..=n as i64).map(int).collect();
    let ys: Vec<Rat> = xs
        .iter()
        .map(|z| poly_resultant(a, &b.dilate(z)).expect("nonzero inputs"))
        .collect();
    interpolate(&xs, &ys)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::rat::ratio;

    /// Sylvester-matrix determinant by fraction-free elimination over Q.
    fn sylvester_resultant(p: &Poly, q: &Poly) -> Rat {
        let (m, n) = (p.degree().unwrap(), q.degree().unwrap());
        let size = m + n;
        if size == 0 {
            return Rat::one();
        }
        let mut mat = vec![vec![Rat::zero(); size]; size];
        for i in 0..n {
            for (j, c) in p.coeffs().iter().rev().enumerate() {
                mat[i][i + j] = c.clone();
            }
        }
        for i in 0..m {
            for (j, c) in q.coeffs().iter().rev().enumerate() {
                mat[n + i][i + j] = c.clone();
            }
        }
        let mut det = Rat::one();
        for col in 0..size {
            let Some(piv) = (col..size).find(|&r| !mat[r][col].is_zero()) else {
                return Rat::zero();
            };
            if piv != col {
                mat.swap(piv, col);
                det = -det;
            }
            det *= &mat[col][col];
            for r in col + 1..size {
                let f = &mat[r][col] / &mat[col][col];
                if f.is_zero() {
                    continue;
                }
                for c in col..size {
                    let t = &f * &mat[col][c];
                    mat[r][c] -= t;
                }
            }
        }
        det
    }

    fn p(c: &[i64]) -> Poly {
        Poly::from_i64s(c)
    }

    #[test]
    fn resultant_examples() {
        assert_eq!(poly_resultant(&p(&[-2, 1]), &p(&[-3, 1])).unwrap(), int(-1));
        assert_eq!(poly_resultant(&p(&[-1, 1]), &p(&[-1, 1])).unwrap(), int(0));
        assert_eq!(poly_resultant(&p(&[-2, 0, 1]), &p(&[-2, 0, 1])).unwrap(), int(0));
        assert!(poly_resultant(&Poly::zero(), &p(&[1, 1])).is_err());
    }

    #[test]
    fn resultant_matches_sylvester_on_fixed_cases() {
        let cases = [
            (p(&[1, 2, 3, 4]), p(&[-5, 0, 7])),
            (p(&[3]), p(&[1, 1, 1])),
            (p(&[0, 0, 1, 1]), p(&[2, -1])),
            (Poly::from_coeffs(vec![ratio(1, 2), ratio(-3, 7), int(5)]), p(&[1, 0, 0, -2, 9])),
            (p(&[6, -5, 1]), p(&[-12, 7, -1])),
        ];
        for (a, b) in cases {
            assert_eq!(poly_resultant(&a, &b).unwrap(), sylvester_resultant(&a, &b), "{a} / {b}");
            assert_eq!(poly_resultant(&b, &a).unwrap(), sylvester_resultant(&b, &a), "{b} / {a}");
        }
    }

    #[test]
    fn shift_resultant_roots_are_root_differences() {
        // a = x (x + 3): roots 0, -3; b = a. R(y) vanishes at y in {0, 3, -3}.
        let a = p(&[0, 3, 1]);
        let r = shift_resultant(&a, &a);
        for y in [0, 3, -3] {
            assert!(r.eval(&int(y)).is_zero());
        }
        assert!(!r.eval(&int(1)).is_zero());
    }

    #[test]
    fn dilation_resultant_roots_are_root_ratios() {
        let a = p(&[4, -5, 1]); // roots 1, 4
        let r = dilation_resultant(&a, &a);
        for z in [ratio(1, 1), ratio(4, 1), ratio(1, 4)] {
            assert!(r.eval(&z).is_zero());
        }
        assert!(!r.eval(&int(2)).is_zero());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn small_poly() -> impl Strategy<Value = Poly> {
            prop::collection::vec(-6i64..=6, 1..=5).prop_map(|c| Poly::from_i64s(&c))
        }

        proptest! {
            #[test]
            fn subresultant_agrees_with_sylvester(a in small_poly(), b in small_poly()) {
                prop_assume!(!a.is_zero() && !b.is_zero());
                prop_assert_eq!(poly_resultant(&a, &b).unwrap(), sylvester_resultant(&a, &b));
            }

            #[test]
            fn resultant_vanishes_iff_common_factor(a in small_poly(), b in small_poly(), c in small_poly()) {
                prop_assume!(!a.is_zero() && !b.is_zero() && !c.is_zero());
                let (a, b) = (&a * &c, &b * &c);
                let shares = Poly::gcd(&a, &b).degree().unwrap_or(0) >= 1;
                prop_assert_eq!(poly_resultant(&a, &b).unwrap().is_zero(), shares);
            }
        }
    }
}
