//! Dense univariate polynomials over Q.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::rat::{denom_lcm, fmt_rat, int, Rat};

/// Polynomial in `x` with rational coefficients, lowest degree first.
///
/// The coefficient vector never carries trailing zeros, so the zero
/// polynomial is the empty vector and `degree()` returns `None` for it.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<Rat>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rat::one())
    }

    pub fn x() -> Self {
        Poly { coeffs: vec![Rat::zero(), Rat::one()] }
    }

    pub fn constant(c: Rat) -> Self {
        Self::from_coeffs(vec![c])
    }

    pub fn monomial(c: Rat, k: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![Rat::zero(); k + 1];
        coeffs[k] = c;
        Poly { coeffs }
    }

    pub fn from_coeffs(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    /// Integer coefficients, lowest degree first.
    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| int(c)).collect())
    }

    /// Monic polynomial with the given roots.
    pub fn from_roots(roots: &[Rat]) -> Self {
        roots.iter().fold(Self::one(), |acc, r| {
            acc * Poly::from_coeffs(vec![-r.clone(), Rat::one()])
        })
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rat {
        self.coeffs.get(i).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to -1.
    pub fn deg_i64(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// True for the zero polynomial and for nonzero constants.
    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn lc(&self) -> Option<&Rat> {
        self.coeffs.last()
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Poly { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    pub fn monic(&self) -> Self {
        match self.lc() {
            None => Self::zero(),
            Some(lc) if lc.is_one() => self.clone(),
            Some(lc) => self.scale(&lc.recip()),
        }
    }

    pub fn eval(&self, at: &Rat) -> Rat {
        self.coeffs
            .iter()
            .rev()
            .fold(Rat::zero(), |acc, c| acc * at + c)
    }

    pub fn derivative(&self) -> Self {
        Self::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * int(i as i64))
                .collect(),
        )
    }

    /// `x * d/dx`.
    pub fn euler_derivative(&self) -> Self {
        Self::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| c * int(i as i64))
                .collect(),
        )
    }

    /// `p(x + c)`.
    pub fn taylor_shift(&self, c: &Rat) -> Self {
        if c.is_zero() || self.is_constant() {
            return self.clone();
        }
        let mut out = vec![Rat::zero(); self.coeffs.len()];
        // Horner: out = out * (x + c) + a_i, from the top coefficient down.
        for a in self.coeffs.iter().rev() {
            for j in (1..out.len()).rev() {
                let carry = &out[j] * c;
                out[j] = &out[j - 1] + carry;
            }
            out[0] = &out[0] * c + a;
        }
        Self::from_coeffs(out)
    }

    /// `p(c * x)`.
    pub fn dilate(&self, c: &Rat) -> Self {
        let mut pw = Rat::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            out.push(a * &pw);
            pw *= c;
        }
        Self::from_coeffs(out)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut acc = Self::one();
        let mut b = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &b;
            }
            e >>= 1;
            if e > 0 {
                b = &b * &b;
            }
        }
        acc
    }

    /// Multiplicity of 0 as a root (`None` for the zero polynomial).
    pub fn x_valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Splits off the largest power of `x`: returns `(m, p / x^m)`.
    pub fn strip_x(&self) -> (usize, Self) {
        match self.x_valuation() {
            None => (0, Self::zero()),
            Some(m) => (m, Poly { coeffs: self.coeffs[m..].to_vec() }),
        }
    }

    pub fn shl(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![Rat::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { coeffs }
    }

    /// Euclidean division. Panics on division by zero.
    pub fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        let dd = d.degree().expect("polynomial division by zero");
        let lc_inv = d.coeffs[dd].recip();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![Rat::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] * &lc_inv;
            if !c.is_zero() {
                for (j, dj) in d.coeffs.iter().enumerate() {
                    let t = &c * dj;
                    rem[k + j] -= t;
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (Self::from_coeffs(quot), Self::from_coeffs(rem))
    }

    pub fn rem(&self, d: &Poly) -> Poly {
        self.div_rem(d).1
    }

    /// Division that is known to be exact; `None` when a remainder is left.
    pub fn checked_div(&self, d: &Poly) -> Option<Poly> {
        let (q, r) = self.div_rem(d);
        r.is_zero().then_some(q)
    }

    pub fn divides(&self, other: &Poly) -> bool {
        !self.is_zero() && other.rem(self).is_zero()
    }

    /// Monic gcd; `gcd(0, 0) = 0`. Runs a primitive remainder sequence over
    /// Z to keep coefficients small.
    pub fn gcd(a: &Poly, b: &Poly) -> Poly {
        if a.is_zero() {
            return b.monic();
        }
        if b.is_zero() {
            return a.monic();
        }
        if a.is_constant() || b.is_constant() {
            return Poly::one();
        }
        let (_, ia) = a.to_primitive_integer();
        let (_, ib) = b.to_primitive_integer();
        let (mut a, mut b) = if ia.len() >= ib.len() { (ia, ib) } else { (ib, ia) };
        while !b.is_empty() {
            let mut r = super::resultant::prem(&a, &b);
            if !r.is_empty() {
                let c = r.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
                for x in r.iter_mut() {
                    *x = &*x / &c;
                }
            }
            a = b;
            b = r;
        }
        Poly::from_bigints(&a).monic()
    }

    /// Returns `(g, s, t)` with `g = s*a + t*b` and `g` the monic gcd.
    pub fn ext_gcd(a: &Poly, b: &Poly) -> (Poly, Poly, Poly) {
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (Poly::one(), Poly::zero());
        let (mut t0, mut t1) = (Poly::zero(), Poly::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s = &s0 - &(&q * &s1);
            let t = &t0 - &(&q * &t1);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
            t0 = std::mem::replace(&mut t1, t);
        }
        match r0.lc().cloned() {
            None => (Poly::zero(), Poly::zero(), Poly::zero()),
            Some(lc) => {
                let inv = lc.recip();
                (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
            }
        }
    }

    pub fn lcm(a: &Poly, b: &Poly) -> Poly {
        if a.is_zero() || b.is_zero() {
            return Poly::zero();
        }
        let g = Poly::gcd(a, b);
        (a * &b.checked_div(&g).expect("gcd divides")).monic()
    }

    /// Product of the distinct monic irreducible factors (up to a constant).
    pub fn squarefree_part(&self) -> Poly {
        if self.is_constant() {
            return self.monic();
        }
        let g = Poly::gcd(self, &self.derivative());
        self.checked_div(&g).expect("gcd divides").monic()
    }

    /// Yun's algorithm. Returns `(lc, [(factor, multiplicity)])` with monic,
    /// squarefree, pairwise coprime factors and `p = lc * prod factor^mult`.
    pub fn squarefree_decomposition(&self) -> (Rat, Vec<(Poly, usize)>) {
        let lc = match self.lc() {
            None => return (Rat::zero(), Vec::new()),
            Some(lc) => lc.clone(),
        };
        let f = self.monic();
        if f.is_constant() {
            return (lc, Vec::new());
        }
        let mut out = Vec::new();
        let df = f.derivative();
        let b = Poly::gcd(&f, &df);
        let mut c = f.checked_div(&b).expect("gcd divides");
        let mut d = &df.checked_div(&b).expect("gcd divides") - &c.derivative();
        let mut i = 1;
        while !c.is_constant() {
            let a = Poly::gcd(&c, &d);
            c = c.checked_div(&a).expect("gcd divides");
            d = &d.checked_div(&a).expect("gcd divides") - &c.derivative();
            if !a.is_constant() {
                out.push((a, i));
            }
            i += 1;
        }
        (lc, out)
    }

    /// Largest divisor of `self` whose roots are all roots of `support`:
    /// the full block of `self` sitting over the roots of `support`.
    pub fn saturate(&self, support: &Poly) -> Poly {
        let mut block = Poly::one();
        let mut rest = self.monic();
        loop {
            let g = Poly::gcd(&rest, support);
            if g.is_constant() {
                return block;
            }
            rest = rest.checked_div(&g).expect("gcd divides");
            block = &block * &g;
        }
    }

    /// Primitive integer polynomial with the same roots, positive leading
    /// coefficient. Also returns the scaling `s` with `self = s * result`.
    pub fn to_primitive_integer(&self) -> (Rat, Vec<BigInt>) {
        if self.is_zero() {
            return (Rat::zero(), Vec::new());
        }
        let l = denom_lcm(self.coeffs.iter());
        let mut ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * Rat::from_integer(l.clone())).to_integer())
            .collect();
        let mut content = ints.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
        if ints.last().is_some_and(|c| c.is_negative()) {
            content = -content;
        }
        for c in ints.iter_mut() {
            *c = &*c / &content;
        }
        (Rat::new(content, l), ints)
    }

    pub fn from_bigints(coeffs: &[BigInt]) -> Poly {
        Poly::from_coeffs(coeffs.iter().map(|c| Rat::from_integer(c.clone())).collect())
    }
}

impl fmt::Display for Poly {
    /// Renders in the CLI expression grammar, e.g. `2*x^2 - 1/2*x + 3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let mono = match i {
                0 => String::new(),
                1 => "x".to_string(),
                _ => format!("x^{i}"),
            };
            if i == 0 {
                write!(f, "{}", fmt_rat(&a))?;
            } else if a.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{}*{mono}", fmt_rat(&a))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

impl Add<&Poly> for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() { (self, rhs) } else { (rhs, self) };
        let mut coeffs = long.coeffs.clone();
        for (c, s) in coeffs.iter_mut().zip(short.coeffs.iter()) {
            *c += s;
        }
        Poly::from_coeffs(coeffs)
    }
}

impl Sub<&Poly> for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(n, Rat::zero());
        for (c, s) in coeffs.iter_mut().zip(rhs.coeffs.iter()) {
            *c -= s;
        }
        Poly::from_coeffs(coeffs)
    }
}

impl Mul<&Poly> for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![Rat::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Poly::from_coeffs(coeffs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Poly> for Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Poly> for Poly {
            type Output = Poly;
            fn $m(self, rhs: &Poly) -> Poly {
                (&self).$m(rhs)
            }
        }
        impl $tr<Poly> for &Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly {
                self.$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl AddAssign<&Poly> for Poly {
    fn add_assign(&mut self, rhs: &Poly) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Poly> for Poly {
    fn sub_assign(&mut self, rhs: &Poly) {
        *self = &*self - rhs;
    }
}

/// Returns monic greatest common divisor; `gcd(0, 0) = 0`.
pub fn poly_gcd(p: &Poly, q: &Poly) -> Poly {
    Poly::gcd(p, q)
}

/// Squarefree factorization as `(factor, multiplicity)` pairs; the leading
/// coefficient is dropped (see [`Poly::squarefree_decomposition`]).
pub fn squarefree_decomposition(p: &Poly) -> Vec<(Poly, usize)> {
    p.squarefree_decomposition().1
}
