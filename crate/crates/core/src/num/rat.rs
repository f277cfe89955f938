//! Helpers around arbitrary-precision rationals.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exact rational constant. `BigRational` keeps the fraction reduced with a
/// positive denominator.
pub type Rat = BigRational;

pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// `base^exp` for a possibly negative exponent. `base` must be nonzero when
/// `exp < 0`.
pub fn pow(base: &Rat, exp: i64) -> Rat {
    let mut acc = Rat::one();
    let mut b = if exp < 0 { base.recip() } else { base.clone() };
    let mut e = exp.unsigned_abs();
    while e > 0 {
        if e & 1 == 1 {
            acc *= &b;
        }
        e >>= 1;
        if e > 0 {
            b = &b * &b;
        }
    }
    acc
}

/// Returns `l` with `q^l == z`, if one exists. Requires `|q| != 1`.
pub fn log_exact(z: &Rat, q: &Rat) -> Option<i64> {
    if z.is_zero() {
        return None;
    }
    debug_assert!(q.abs() != Rat::one() && !q.is_zero());
    // |q^l| is strictly monotone in l, so walk towards |z|.
    let target = z.abs();
    let aq = q.abs();
    let grows = aq > Rat::one();
    let up = (target > Rat::one()) == grows;
    let step: i64 = if up { 1 } else { -1 };
    let mut l: i64 = 0;
    let mut cur = Rat::one();
    let mul = if up { aq.clone() } else { aq.recip() };
    loop {
        if cur == target {
            return (pow(q, l) == *z).then_some(l);
        }
        let overshoot = if target > Rat::one() { cur > target } else { cur < target };
        if overshoot {
            return None;
        }
        cur *= &mul;
        l += step;
    }
}

pub fn is_integer(r: &Rat) -> bool {
    r.denom().is_one()
}

/// Least common multiple of the denominators of `items`.
pub fn denom_lcm<'a>(items: impl IntoIterator<Item = &'a Rat>) -> BigInt {
    items
        .into_iter()
        .fold(BigInt::one(), |acc, r| acc.lcm(r.denom()))
}

/// Renders `r` as `n` or `n/d`.
pub fn fmt_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pow_handles_negative_exponents() {
        assert_eq!(pow(&ratio(1, 4), -2), int(16));
        assert_eq!(pow(&int(-3), 3), int(-27));
        assert_eq!(pow(&int(7), 0), int(1));
    }

    #[test]
    fn log_exact_finds_powers() {
        let q = ratio(1, 4);
        assert_eq!(log_exact(&int(16), &q), Some(-2));
        assert_eq!(log_exact(&ratio(1, 64), &q), Some(3));
        assert_eq!(log_exact(&int(1), &q), Some(0));
        assert_eq!(log_exact(&int(8), &q), None);
        assert_eq!(log_exact(&int(-2), &int(-2)), Some(1));
        assert_eq!(log_exact(&int(4), &int(-2)), Some(2));
        assert_eq!(log_exact(&int(-4), &int(-2)), None);
        assert_eq!(log_exact(&int(0), &int(2)), None);
    }
}
