//! The two commuting (σ, ∂) structures on Q(x): the shift `x -> x + 1` with
//! `d/dx`, and the q-dilation `x -> q x` with `x d/dx`.

use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::num::rat::{self, fmt_rat, int, Rat};
use crate::num::{Poly, RatFun};

/// Largest |power| accepted by [`apply_sigma`].
pub const MAX_SIGMA_POWER: i64 = i32::MAX as i64;

#[derive(Clone, PartialEq, Eq, Hash)]
pub enum DiffStructure {
    Shift,
    QDilation(Rat),
}

impl DiffStructure {
    pub fn shift() -> Self {
        DiffStructure::Shift
    }

    pub fn q_dilation(q: Rat) -> Result<Self> {
        if q.is_zero() || q.abs().is_one() {
            return Err(Error::InvalidQ(fmt_rat(&q)));
        }
        Ok(DiffStructure::QDilation(q))
    }

    pub fn is_shift(&self) -> bool {
        matches!(self, DiffStructure::Shift)
    }

    pub fn q(&self) -> Option<&Rat> {
        match self {
            DiffStructure::Shift => None,
            DiffStructure::QDilation(q) => Some(q),
        }
    }

    /// `σ^k(p)` for a polynomial. Not renormalized: in the q case the
    /// leading coefficient picks up `q^(k deg p)`.
    pub fn sigma_poly(&self, p: &Poly, k: i64) -> Poly {
        match self {
            DiffStructure::Shift => p.taylor_shift(&int(k)),
            DiffStructure::QDilation(q) => p.dilate(&rat::pow(q, k)),
        }
    }

    /// `σ^k(f)`.
    pub fn sigma_pow(&self, f: &RatFun, k: i64) -> RatFun {
        if k == 0 {
            return f.clone();
        }
        f.map_polys(|p| self.sigma_poly(p, k))
    }

    pub fn sigma(&self, f: &RatFun) -> RatFun {
        self.sigma_pow(f, 1)
    }

    pub fn sigma_inv(&self, f: &RatFun) -> RatFun {
        self.sigma_pow(f, -1)
    }

    pub fn derive_poly(&self, p: &Poly) -> Poly {
        match self {
            DiffStructure::Shift => p.derivative(),
            DiffStructure::QDilation(_) => p.euler_derivative(),
        }
    }

    pub fn derive(&self, f: &RatFun) -> RatFun {
        match self {
            DiffStructure::Shift => f.derivative(),
            DiffStructure::QDilation(_) => &f.derivative() * &RatFun::x(),
        }
    }

    /// `∂^j(f)`.
    pub fn derive_n(&self, f: &RatFun, j: usize) -> RatFun {
        (0..j).fold(f.clone(), |acc, _| self.derive(&acc))
    }

    /// The polynomial with the same roots as `p` that a dispersion
    /// computation looks at: all of `p` for the shift, the part prime to `x`
    /// in the q case (0 is a fixed point of the dilation).
    pub fn orbit_part(&self, p: &Poly) -> Poly {
        match self {
            DiffStructure::Shift => p.clone(),
            DiffStructure::QDilation(_) => p.strip_x().1,
        }
    }
}

impl fmt::Display for DiffStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DiffStructure::Shift => write!(f, "shift"),
            DiffStructure::QDilation(q) => write!(f, "q-dilation(q = {})", fmt_rat(q)),
        }
    }
}

impl fmt::Debug for DiffStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `L = Σ c_j ∂^j` with constant coefficients, `c_s != 0` unless zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct ConstLinDiffOp {
    coeffs: Vec<Rat>,
}

impl ConstLinDiffOp {
    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        ConstLinDiffOp { coeffs }
    }

    pub fn identity() -> Self {
        Self::new(vec![Rat::one()])
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero operator.
    pub fn order(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn scale(&self, c: &Rat) -> Self {
        Self::new(self.coeffs.iter().map(|x| x * c).collect())
    }
}

impl fmt::Display for ConstLinDiffOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (j, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let a = c.abs();
            let lead = if j > 0 && a.is_one() { String::new() } else { fmt_rat(&a) };
            match j {
                0 => write!(f, "{lead}")?,
                1 if lead.is_empty() => write!(f, "D")?,
                1 => write!(f, "{lead}*D")?,
                _ if lead.is_empty() => write!(f, "D^{j}")?,
                _ => write!(f, "{lead}*D^{j}")?,
            }
        }
        Ok(())
    }
}

/// `σ^power(f)`.
pub fn apply_sigma(ds: &DiffStructure, f: &RatFun, power: i64) -> Result<RatFun> {
    if power.abs() > MAX_SIGMA_POWER {
        return Err(Error::PowerOverflow(power));
    }
    Ok(ds.sigma_pow(f, power))
}

pub fn apply_derivation(ds: &DiffStructure, f: &RatFun) -> RatFun {
    ds.derive(f)
}

/// `Σ c_j ∂^j(f)`.
pub fn apply_op(ds: &DiffStructure, l: &ConstLinDiffOp, f: &RatFun) -> RatFun {
    let mut out = RatFun::zero();
    let mut d = f.clone();
    for (j, c) in l.coeffs().iter().enumerate() {
        if j > 0 {
            d = ds.derive(&d);
        }
        if !c.is_zero() {
            out = &out + &d.scale(c);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::rat::ratio;

    fn p(c: &[i64]) -> Poly {
        Poly::from_i64s(c)
    }

    fn rf(n: &[i64], d: &[i64]) -> RatFun {
        RatFun::new(p(n), p(d)).unwrap()
    }

    #[test]
    fn rejects_bad_q() {
        for q in [int(0), int(1), int(-1)] {
            assert!(DiffStructure::q_dilation(q).is_err());
        }
        assert!(DiffStructure::q_dilation(ratio(1, 4)).is_ok());
        assert!(DiffStructure::q_dilation(ratio(-3, 2)).is_ok());
    }

    #[test]
    fn sigma_examples() {
        let s = DiffStructure::shift();
        assert_eq!(apply_sigma(&s, &RatFun::x(), 1).unwrap(), rf(&[1, 1], &[1]));
        assert_eq!(apply_sigma(&s, &rf(&[1], &[0, 1]), -1).unwrap(), rf(&[1], &[-1, 1]));
        let q2 = DiffStructure::q_dilation(int(2)).unwrap();
        assert_eq!(apply_sigma(&q2, &rf(&[0, 0, 1], &[1]), 1).unwrap(), rf(&[0, 0, 4], &[1]));
        assert!(matches!(apply_sigma(&s, &RatFun::x(), i64::MAX), Err(Error::PowerOverflow(_))));
    }

    #[test]
    fn derivation_examples() {
        let s = DiffStructure::shift();
        let q = DiffStructure::q_dilation(int(3)).unwrap();
        assert_eq!(apply_derivation(&s, &rf(&[0, 0, 1], &[1])), rf(&[0, 2], &[1]));
        assert_eq!(apply_derivation(&q, &rf(&[0, 0, 1], &[1])), rf(&[0, 0, 2], &[1]));
        assert_eq!(apply_derivation(&s, &rf(&[1], &[0, 1])), rf(&[-1], &[0, 0, 1]));
    }

    #[test]
    fn op_examples() {
        let s = DiffStructure::shift();
        let q = DiffStructure::q_dilation(int(2)).unwrap();
        let d = ConstLinDiffOp::new(vec![int(0), int(1)]);
        assert_eq!(apply_op(&s, &d, &rf(&[0, 0, 0, 1], &[1])), rf(&[0, 0, 3], &[1]));
        let dm1 = ConstLinDiffOp::new(vec![int(-1), int(1)]);
        assert!(apply_op(&q, &dm1, &RatFun::x()).is_zero());
        let f = rf(&[3, 1], &[2, 0, 1]);
        assert_eq!(apply_op(&s, &ConstLinDiffOp::identity(), &f), f);
    }

    #[test]
    fn op_display() {
        let l = ConstLinDiffOp::new(vec![int(-1), int(0), ratio(1, 2)]);
        assert_eq!(l.to_string(), "1/2*D^2 - 1");
        assert_eq!(ConstLinDiffOp::default().to_string(), "0");
        assert_eq!(l.order(), Some(2));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn ratfun() -> impl Strategy<Value = RatFun> {
            (
                prop::collection::vec(-9i64..=9, 1..=6),
                prop::collection::vec(-9i64..=9, 1..=6),
            )
                .prop_filter_map("zero denominator", |(n, d)| {
                    RatFun::new(Poly::from_i64s(&n), Poly::from_i64s(&d)).ok()
                })
        }

        fn structure() -> impl Strategy<Value = DiffStructure> {
            prop_oneof![
                Just(DiffStructure::Shift),
                (-5i64..=5, 1i64..=5).prop_filter_map("|q| = 1", |(n, d)| {
                    DiffStructure::q_dilation(ratio(n, d)).ok()
                }),
            ]
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(200))]

            #[test]
            fn sigma_commutes_with_derivation(ds in structure(), f in ratfun()) {
                prop_assert_eq!(ds.sigma(&ds.derive(&f)), ds.derive(&ds.sigma(&f)));
            }

            #[test]
            fn sigma_inverse_round_trip(ds in structure(), f in ratfun(), k in -3i64..=3) {
                prop_assert_eq!(ds.sigma_pow(&ds.sigma_pow(&f, k), -k), f);
            }

            #[test]
            fn op_is_linear(
                ds in structure(),
                f in ratfun(),
                g in ratfun(),
                c in prop::collection::vec(-4i64..=4, 0..=3),
            ) {
                let l = ConstLinDiffOp::new(c.into_iter().map(int).collect());
                let lhs = apply_op(&ds, &l, &(&f + &g));
                prop_assert_eq!(lhs, &apply_op(&ds, &l, &f) + &apply_op(&ds, &l, &g));
            }
        }
    }
}
