//! Reduced rational functions over Q.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::poly::Poly;
use super::rat::Rat;
use crate::error::{Error, Result};

/// `num / den` with `gcd(num, den) = 1` and `den` monic. Zero is `0 / 1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFun {
    num: Poly,
    den: Poly,
}

impl RatFun {
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroInput("rational function with zero denominator"));
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let g = Poly::gcd(&num, &den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (num.checked_div(&g).expect("gcd divides"), den.checked_div(&g).expect("gcd divides"))
        };
        let lc = den.lc().expect("nonzero denominator").clone();
        if lc.is_one() {
            RatFun { num, den }
        } else {
            let inv = lc.recip();
            RatFun { num: num.scale(&inv), den: den.scale(&inv) }
        }
    }

    pub fn zero() -> Self {
        RatFun { num: Poly::zero(), den: Poly::one() }
    }

    pub fn one() -> Self {
        Self::constant(Rat::one())
    }

    pub fn x() -> Self {
        Self::from_poly(Poly::x())
    }

    pub fn constant(c: Rat) -> Self {
        RatFun { num: Poly::constant(c), den: Poly::one() }
    }

    pub fn from_poly(p: Poly) -> Self {
        RatFun { num: p, den: Poly::one() }
    }

    /// `c * x^k` for any integer `k`.
    pub fn monomial(c: Rat, k: i64) -> Self {
        if k >= 0 {
            Self::from_poly(Poly::monomial(c, k as usize))
        } else {
            Self::reduce(Poly::constant(c), Poly::monomial(Rat::one(), k.unsigned_abs() as usize))
        }
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn into_parts(self) -> (Poly, Poly) {
        (self.num, self.den)
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_constant(&self) -> Option<Rat> {
        (self.den.is_one() && self.num.is_constant()).then(|| self.num.coeff(0))
    }

    /// Returns `(c, n)` when `self = c * x^n` with `c != 0`.
    pub fn as_monomial(&self) -> Option<(Rat, i64)> {
        if self.is_zero() {
            return None;
        }
        let (a, rest_n) = self.num.strip_x();
        let (b, rest_d) = self.den.strip_x();
        (rest_n.is_constant() && rest_d.is_constant())
            .then(|| (rest_n.coeff(0) / rest_d.coeff(0), a as i64 - b as i64))
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        RatFun { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroInput("inverse of zero"));
        }
        Ok(Self::reduce(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, rhs: &RatFun) -> Result<Self> {
        Ok(self * &rhs.inv()?)
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let k = u32::try_from(e.unsigned_abs()).map_err(|_| Error::PowerOverflow(e))?;
        Ok(RatFun { num: base.num.pow(k), den: base.den.pow(k) })
    }

    /// Applies a ring map to numerator and denominator, e.g. a substitution
    /// `x -> x + c`, and renormalizes.
    pub fn map_polys(&self, f: impl Fn(&Poly) -> Poly) -> Self {
        Self::reduce(f(&self.num), f(&self.den))
    }

    /// `d/dx`.
    pub fn derivative(&self) -> Self {
        let n = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        Self::reduce(n, &self.den * &self.den)
    }

    pub fn eval(&self, at: &Rat) -> Option<Rat> {
        let d = self.den.eval(at);
        (!d.is_zero()).then(|| self.num.eval(at) / d)
    }

    /// Splits into polynomial part and proper fraction.
    pub fn split_polynomial(&self) -> (Poly, RatFun) {
        let (q, r) = self.num.div_rem(&self.den);
        (q, Self::reduce(r, self.den.clone()))
    }
}

impl Default for RatFun {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<Poly> for RatFun {
    fn from(p: Poly) -> Self {
        Self::from_poly(p)
    }
}

impl From<Rat> for RatFun {
    fn from(c: Rat) -> Self {
        Self::constant(c)
    }
}

impl fmt::Display for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            let wrap = |p: &Poly| {
                if p.coeffs().iter().filter(|c| !c.is_zero()).count() > 1 {
                    format!("({p})")
                } else {
                    p.to_string()
                }
            };
            write!(f, "{}/{}", wrap(&self.num), wrap(&self.den))
        }
    }
}

impl fmt::Debug for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFun({self})")
    }
}

impl Add<&RatFun> for &RatFun {
    type Output = RatFun;
    fn add(self, rhs: &RatFun) -> RatFun {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return RatFun::reduce(&self.num + &rhs.num, self.den.clone());
        }
        let g = Poly::gcd(&self.den, &rhs.den);
        let rd = rhs.den.checked_div(&g).expect("gcd divides");
        let sd = self.den.checked_div(&g).expect("gcd divides");
        let num = &(&self.num * &rd) + &(&rhs.num * &sd);
        RatFun::reduce(num, &self.den * &rd)
    }
}

impl Sub<&RatFun> for &RatFun {
    type Output = RatFun;
    fn sub(self, rhs: &RatFun) -> RatFun {
        self + &(-rhs)
    }
}

impl Mul<&RatFun> for &RatFun {
    type Output = RatFun;
    fn mul(self, rhs: &RatFun) -> RatFun {
        if self.is_zero() || rhs.is_zero() {
            return RatFun::zero();
        }
        // Cross-cancel before multiplying to keep degrees down.
        let g1 = Poly::gcd(&self.num, &rhs.den);
        let g2 = Poly::gcd(&rhs.num, &self.den);
        let n1 = self.num.checked_div(&g1).expect("gcd divides");
        let d2 = rhs.den.checked_div(&g1).expect("gcd divides");
        let n2 = rhs.num.checked_div(&g2).expect("gcd divides");
        let d1 = self.den.checked_div(&g2).expect("gcd divides");
        RatFun::reduce(&n1 * &n2, &d1 * &d2)
    }
}

/// Panics on division by zero; see [`RatFun::checked_div`].
impl Div<&RatFun> for &RatFun {
    type Output = RatFun;
    fn div(self, rhs: &RatFun) -> RatFun {
        self.checked_div(rhs).expect("division by zero rational function")
    }
}

impl Neg for &RatFun {
    type Output = RatFun;
    fn neg(self) -> RatFun {
        RatFun { num: -&self.num, den: self.den.clone() }
    }
}

impl Neg for RatFun {
    type Output = RatFun;
    fn neg(self) -> RatFun {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<RatFun> for RatFun {
            type Output = RatFun;
            fn $m(self, rhs: RatFun) -> RatFun {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&RatFun> for RatFun {
            type Output = RatFun;
            fn $m(self, rhs: &RatFun) -> RatFun {
                (&self).$m(rhs)
            }
        }
        impl $tr<RatFun> for &RatFun {
            type Output = RatFun;
            fn $m(self, rhs: RatFun) -> RatFun {
                self.$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

/// Splits `f` into `(f1, f2)` with `f = f1 + f2`, `den(f1) | d1` and
/// `den(f2) | d2`; any polynomial part lands in `f2`.
///
/// Requires `gcd(d1, d2) = 1` and `den(f) | d1 * d2`.
pub fn partial_split(f: &RatFun, d1: &Poly, d2: &Poly) -> Result<(RatFun, RatFun)> {
    if d1.is_zero() || d2.is_zero() {
        return Err(Error::Precondition("partial_split with a zero denominator factor".into()));
    }
    let (g, s, t) = Poly::ext_gcd(d1, d2);
    if !g.is_one() {
        return Err(Error::Precondition(format!("partial_split factors not coprime: gcd = {g}")));
    }
    let d = d1 * d2;
    let Some(cof) = d.checked_div(f.den()) else {
        return Err(Error::Precondition(format!(
            "denominator {} does not divide {}",
            f.den(),
            d
        )));
    };
    // f = N / (d1 d2) and 1 = s d1 + t d2, so f = N t / d1 + N s / d2.
    let n = f.num() * &cof;
    let (q, r) = (&n * &t).div_rem(d1);
    let f1 = RatFun::new(r, d1.clone())?;
    let f2 = RatFun::new(&(&n * &s) + &(&q * d2), d2.clone())?;
    Ok((f1, f2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::rat::{int, ratio};

    fn p(c: &[i64]) -> Poly {
        Poly::from_i64s(c)
    }

    fn rf(n: &[i64], d: &[i64]) -> RatFun {
        RatFun::new(p(n), p(d)).unwrap()
    }

    #[test]
    fn reduction_invariants() {
        let f = rf(&[-2, 0, 2], &[-2, 2]); // (2x^2 - 2)/(2x - 2) = x + 1
        assert_eq!(f, RatFun::from_poly(p(&[1, 1])));
        let g = rf(&[1], &[0, 3]);
        assert!(g.den().lc().unwrap().is_one());
        assert_eq!(g.num(), &Poly::constant(ratio(1, 3)));
        assert!(RatFun::new(p(&[1]), Poly::zero()).is_err());
    }

    #[test]
    fn arithmetic() {
        let a = rf(&[1], &[0, 1]);
        let b = rf(&[1], &[1, 1]);
        assert_eq!(&a - &b, rf(&[1], &[0, 1, 1]));
        assert_eq!(&(&a * &b) * &rf(&[0, 1, 1], &[1]), RatFun::one());
        assert_eq!(&a / &a, RatFun::one());
        assert!(a.checked_div(&RatFun::zero()).is_err());
        assert_eq!(a.pow(-2).unwrap(), RatFun::from_poly(p(&[0, 0, 1])));
    }

    #[test]
    fn monomial_detection() {
        assert_eq!(RatFun::monomial(int(5), 3).as_monomial(), Some((int(5), 3)));
        assert_eq!(RatFun::monomial(ratio(1, 2), -2).as_monomial(), Some((ratio(1, 2), -2)));
        assert_eq!(rf(&[1, 1], &[1]).as_monomial(), None);
    }

    #[test]
    fn partial_split_examples() {
        let (f1, f2) = partial_split(&rf(&[1], &[0, 1, 1]), &p(&[0, 1]), &p(&[1, 1])).unwrap();
        assert_eq!((f1, f2), (rf(&[1], &[0, 1]), rf(&[-1], &[1, 1])));

        let (f1, f2) = partial_split(&rf(&[1], &[0, 1]), &p(&[0, 1]), &Poly::one()).unwrap();
        assert_eq!((f1, f2), (rf(&[1], &[0, 1]), RatFun::zero()));

        let (f1, f2) = partial_split(&rf(&[1, 2], &[0, 1, 1]), &p(&[0, 1]), &p(&[1, 1])).unwrap();
        assert_eq!((f1, f2), (rf(&[1], &[0, 1]), rf(&[1], &[1, 1])));
    }

    #[test]
    fn partial_split_rejects_bad_factors() {
        let f = rf(&[1], &[0, 1, 1]);
        assert!(partial_split(&f, &p(&[0, 1]), &p(&[0, 1])).is_err());
        assert!(partial_split(&f, &p(&[0, 1]), &p(&[2, 1])).is_err());
    }

    #[test]
    fn partial_split_keeps_polynomial_part_in_second() {
        let f = rf(&[1, 0, 0, 1], &[0, 1, 1]); // (x^3 + 1)/(x(x+1))
        let (f1, f2) = partial_split(&f, &p(&[0, 1]), &p(&[1, 1])).unwrap();
        assert!(p(&[0, 1]).rem(f1.den()).is_zero());
        assert_eq!(&f1 + &f2, f);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn poly() -> impl Strategy<Value = Poly> {
            prop::collection::vec(-5i64..=5, 1..=4).prop_map(|c| Poly::from_i64s(&c))
        }

        proptest! {
            #[test]
            fn partial_split_sums_back(n in poly(), d1 in poly(), d2 in poly()) {
                prop_assume!(!d1.is_zero() && !d2.is_zero());
                prop_assume!(Poly::gcd(&d1, &d2).is_one());
                let f = RatFun::new(n, &d1 * &d2).unwrap();
                let (f1, f2) = partial_split(&f, &d1, &d2).unwrap();
                prop_assert!(d1.rem(f1.den()).is_zero());
                prop_assert!(d2.rem(f2.den()).is_zero());
                prop_assert_eq!(&f1 + &f2, f);
            }
        }
    }
}
