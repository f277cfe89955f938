//! Exact integer and rational roots of univariate polynomials.
//!
//! Integer roots are found p-adically: roots modulo a prime that keeps the
//! squarefree part squarefree are Hensel-lifted past twice the Cauchy bound
//! and checked exactly. Rational roots reduce to integer roots of the monic
//! transform `lc^(n-1) f(z / lc)`, which is the rational-root theorem after
//! integer clearing without enumerating divisors.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::modp::{eval_mod, gcd_degree_mod, reduce_mod};
use super::poly::Poly;
use super::rat::Rat;

fn eval_int(f: &[BigInt], x: &BigInt) -> BigInt {
    f.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn inv_mod(a: &BigInt, m: &BigInt) -> BigInt {
    let e = a.mod_floor(m).extended_gcd(m);
    debug_assert!(e.gcd.is_one());
    e.x.mod_floor(m)
}

/// Distinct integer roots of a nonzero squarefree primitive integer
/// polynomial with nonzero constant term.
fn integer_roots_squarefree(f: &[BigInt]) -> Vec<BigInt> {
    let n = f.len() - 1;
    if n == 0 {
        return Vec::new();
    }
    let lc = &f[n];
    if n == 1 {
        let (q, r) = (-&f[0]).div_rem(lc);
        return if r.is_zero() { vec![q] } else { Vec::new() };
    }
    let max_c = f[..n].iter().map(|c| c.abs()).max().unwrap();
    let bound = max_c.div_ceil(&lc.abs()) + BigInt::one();

    let df: Vec<BigInt> = f.iter().enumerate().skip(1).map(|(i, c)| c * BigInt::from(i)).collect();
    let mut p = 1009u64;
    let fp = loop {
        if is_prime(p) && !(lc % BigInt::from(p)).is_zero() {
            let fp = reduce_mod(f, p);
            let dfp = reduce_mod(&df, p);
            if gcd_degree_mod(&fp, &dfp, p) == 0 {
                break fp;
            }
        }
        p += 2;
    };
    let mod_roots: Vec<u64> = (0..p).filter(|&r| eval_mod(&fp, r, p) == 0).collect();

    let target = &bound * 2 + BigInt::one();
    let mut out = Vec::new();
    for r0 in mod_roots {
        let mut m = BigInt::from(p);
        let mut r = BigInt::from(r0);
        while m <= target {
            m = &m * &m;
            let fr = eval_int(f, &r);
            let dfr = eval_int(&df, &r);
            r = (&r - fr * inv_mod(&dfr, &m)).mod_floor(&m);
        }
        let cand = if &r * 2 > m { &r - &m } else { r };
        if cand.abs() <= bound && eval_int(f, &cand).is_zero() {
            out.push(cand);
        }
    }
    out.sort();
    out
}

/// Distinct integer roots of `p`, ascending. The zero polynomial has no
/// reported roots.
pub fn integer_roots(p: &Poly) -> Vec<BigInt> {
    if p.is_zero() {
        return Vec::new();
    }
    let (m, rest) = p.strip_x();
    let (_, f) = rest.squarefree_part().to_primitive_integer();
    let mut out = integer_roots_squarefree(&f);
    if m > 0 {
        out.push(BigInt::zero());
        out.sort();
    }
    out
}

/// Exactly the rational roots of `p`, each once, ascending.
pub fn rational_roots(p: &Poly) -> Vec<Rat> {
    if p.is_zero() {
        return Vec::new();
    }
    let (m, rest) = p.strip_x();
    let (_, f) = rest.squarefree_part().to_primitive_integer();
    let n = f.len() - 1;
    let mut out: Vec<Rat> = Vec::new();
    if n > 0 {
        let lc = f[n].clone();
        // g(z) = lc^(n-1) f(z / lc) is monic with integer coefficients.
        let mut g = Vec::with_capacity(n + 1);
        let mut pw = BigInt::one();
        let mut pows = vec![BigInt::one(); n];
        for k in 1..n {
            pw *= &lc;
            pows[k] = pw.clone();
        }
        for i in 0..n {
            g.push(&f[i] * &pows[n - 1 - i]);
        }
        g.push(BigInt::one());
        out = integer_roots_squarefree(&g)
            .into_iter()
            .map(|z| Rat::new(z, lc.clone()))
            .collect();
    }
    if m > 0 {
        out.push(Rat::zero());
    }
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;
    use crate::num::rat::{int, ratio};

    fn p(c: &[i64]) -> Poly {
        Poly::from_i64s(c)
    }

    #[test]
    fn rational_root_examples() {
        assert_eq!(rational_roots(&p(&[-1, -1, 2])), vec![ratio(-1, 2), int(1)]);
        assert_eq!(rational_roots(&p(&[1, 0, 1])), Vec::<Rat>::new());
        let f = Poly::from_roots(&[int(0), int(3), int(-2)]);
        assert_eq!(rational_roots(&f), vec![int(-2), int(0), int(3)]);
    }

    #[test]
    fn repeated_and_large_roots() {
        let f = &Poly::from_roots(&[int(12345), int(12345), ratio(-7, 9)]) * &p(&[2, 0, 1]);
        assert_eq!(rational_roots(&f), vec![ratio(-7, 9), int(12345)]);
        assert_eq!(integer_roots(&f), vec![BigInt::from(12345)]);
    }

    #[test]
    fn integer_roots_of_high_degree_product() {
        let roots: Vec<Rat> = (-6..=6).map(int).collect();
        let f = &Poly::from_roots(&roots) * &p(&[3, 0, 0, 1]);
        let got: Vec<i64> = integer_roots(&f).iter().map(|r| r.to_i64().unwrap()).collect();
        assert_eq!(got, (-6..=6).collect::<Vec<_>>());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn planted_rational_roots_are_found(
                nums in prop::collection::vec(-30i64..=30, 1..=4),
                dens in prop::collection::vec(1i64..=6, 4),
                extra in prop::collection::vec(-5i64..=5, 1..=3),
            ) {
                let roots: Vec<Rat> = nums.iter().zip(dens.iter()).map(|(&n, &d)| ratio(n, d)).collect();
                let f = &Poly::from_roots(&roots) * &Poly::from_i64s(&extra);
                prop_assume!(!f.is_zero());
                let found = rational_roots(&f);
                for r in &roots {
                    prop_assert!(found.contains(r));
                }
                for r in &found {
                    prop_assert!(f.eval(r).is_zero());
                }
            }
        }
    }
}
