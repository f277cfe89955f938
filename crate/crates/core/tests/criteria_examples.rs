//! Criteria on the worked examples: Γ-type hypergeometric terms, the SL2
//! shift matrix and its scalar trace, the q = 1/4 companion matrix, and the
//! group classifications.

use std::time::Instant;

use diffalg_core::criteria::{
    companion_matrix, group_classify_inhomog_sum, hypergeom_da_test, integrability_test, DAStatus, GroupKind,
    IntegrabilityStatus,
};
use diffalg_core::num::rat::{int, ratio};
use diffalg_core::solver::{MatrixRF, SolverConfig};
use diffalg_core::{DiffStructure, Poly, RatFun};

fn p(c: &[i64]) -> Poly {
    Poly::from_i64s(c)
}

fn c(v: i64) -> RatFun {
    RatFun::constant(int(v))
}

fn frac(n: Poly, d: Poly) -> RatFun {
    RatFun::new(n, d).unwrap()
}

#[test]
fn gamma_recurrence_is_transcendental_and_rational_twist_is_not() {
    let s = DiffStructure::shift();
    let start = Instant::now();
    assert_eq!(hypergeom_da_test(&s, &RatFun::x()).unwrap().status, DAStatus::DifferentiallyTranscendental);
    let b = frac(p(&[3, 3]), p(&[0, 1]));
    let v = hypergeom_da_test(&s, &b).unwrap();
    assert_eq!(v.status, DAStatus::DifferentiallyAlgebraic);
    assert!(start.elapsed().as_secs() < 1);
}

#[test]
fn sl2_shift_matrix_trace_matches_third_order_equation() {
    let s = DiffStructure::shift();
    let a = MatrixRF::new(vec![vec![c(0), c(-1)], vec![c(1), RatFun::x()]]).unwrap();
    let r = integrability_test(&s, &a, &SolverConfig::default()).unwrap();
    assert_eq!(r.status, IntegrabilityStatus::NotConstantConjugate);

    // x σ³(b) − (x³+2x²−1) σ²(b) + x(x²+x−1) σ(b) − (x+1) b = 2x + 1
    let expected = [p(&[-1, -1]), p(&[0, -1, 1, 1]), p(&[1, 0, -2, -1]), p(&[0, 1])];
    let eq = &r.scalar_trace[1].equation;
    assert_eq!(eq.order(), 3);
    let lead = RatFun::from_poly(eq.coeffs()[3].clone());
    let exp_lead = RatFun::from_poly(expected[3].clone());
    for (got, want) in eq.coeffs().iter().zip(&expected) {
        let got = RatFun::from_poly(got.clone()).checked_div(&lead).unwrap();
        let want = RatFun::from_poly(want.clone()).checked_div(&exp_lead).unwrap();
        assert_eq!(got, want);
    }
    let rhs = eq.rhs_basis()[0].checked_div(&lead).unwrap();
    assert_eq!(rhs, RatFun::from_poly(p(&[1, 2])).checked_div(&exp_lead).unwrap());
}

#[test]
fn q_quarter_companion_matrix_is_not_integrable() {
    let start = Instant::now();
    let ds = DiffStructure::q_dilation(ratio(1, 4)).unwrap();
    // y(q²x) − 4(x−2)/(x−4) y(qx) + 16(x−1)/(4x−1) y(x) = 0
    let p0 = frac(p(&[-16, 16]), p(&[-1, 4]));
    let p1 = frac(p(&[8, -4]), p(&[-4, 1]));
    let a = companion_matrix(&[p0, p1, c(1)]).unwrap();
    let r = integrability_test(&ds, &a, &SolverConfig::default()).unwrap();
    assert_eq!(r.status, IntegrabilityStatus::NotConstantConjugate);
    assert!(start.elapsed().as_secs() < 60);
}

#[test]
fn group_classification_examples() {
    let cfg = SolverConfig::default();
    let s = DiffStructure::shift();
    let q = int(3);
    let ds = DiffStructure::q_dilation(q.clone()).unwrap();

    let g = group_classify_inhomog_sum(&s, &RatFun::monomial(int(1), -1), &cfg).unwrap();
    assert_eq!(g.class, GroupKind::FullGa);
    let g = group_classify_inhomog_sum(&ds, &frac(p(&[1]), p(&[-1, 1])), &cfg).unwrap();
    assert_eq!(g.class, GroupKind::FullGa);

    let f = RatFun::from_poly(Poly::from_coeffs(vec![int(1), &q - int(1)]));
    let g = group_classify_inhomog_sum(&ds, &f, &cfg).unwrap();
    assert_eq!(g.class, GroupKind::ConstantsGa);
    let cert = g.certificate.unwrap();
    assert_eq!((cert.h, cert.c), (RatFun::x(), int(1)));

    let g = group_classify_inhomog_sum(&s, &RatFun::one(), &cfg).unwrap();
    assert_eq!(g.class, GroupKind::TrivialGroup);
    assert_eq!(g.certificate.unwrap().h, RatFun::x());
}
