use hypspinor::exact::{q, Q};
use hypspinor::invariants::BasisSlot;
use hypspinor::radial::{
    assemble_radial, closed_form_residuals, constraint_a0, critical_weights, dirac_sq_order0_spectrum, indicial_data,
    integrate, matches_operator_formula, reduce_to_ode, RadialOperator, SecondOrderODE,
};
use hypspinor::symbolic::{Poly, RatFunc};
use hypspinor::BlockLabel;
use proptest::prelude::*;

#[test]
fn operator_entries_at_0_8() {
    let op = assemble_radial(BlockLabel::new(0, 8)).unwrap();
    let i = |s| op.index(s).unwrap();
    let s4 = i(BasisSlot::Sigma(4));
    assert_eq!(op.m_const.get(s4, s4), &q(-2));
    assert_eq!(op.m_sqrt.get(i(BasisSlot::Sigma(2)), s4), &q(-9));
    assert_eq!(op.m_sqrt.get(i(BasisSlot::Tau(2)), s4), &q(9));
    assert_eq!(RadialOperator::derivative_coefficient(), Poly::from_ints(&[0, -2, -2]));
}

#[test]
fn constraint_coefficient_vanishes_at_k_minus_2() {
    for (k, l) in [(2, 6), (4, 8), (6, 10), (3, 7)] {
        let c = constraint_a0(BlockLabel::new(k, l)).unwrap();
        assert!(c.coeff_a2.eval_f64((k - 2) as f64).abs() < 1e-12, "({k},{l})");
    }
    let c = constraint_a0(BlockLabel::new(2, 8)).unwrap();
    assert!((c.coeff_a4.eval_f64(0.0) - 80.0 / 8.0).abs() < 1e-12);
}

#[test]
fn printed_numerators() {
    let p0 = |k, l| SecondOrderODE::as_quoted(BlockLabel::new(k, l)).p0;
    assert_eq!(p0(0, 4), RatFunc::new(Poly::from_ints(&[9]), Poly::from_ints(&[1, 1])));
    assert_eq!(
        p0(2, 6),
        RatFunc::new(Poly::from_ints(&[-24, 8]), Poly::from_ints(&[0, 4, 4]))
    );
}

#[test]
fn reduction_is_hypergeometric_and_differs_from_print_by_8u_over_u_plus_1() {
    let offset = RatFunc::new(Poly::from_ints(&[0, 8]), Poly::from_ints(&[1, 1]));
    for l in 4..=10 {
        for k in (-(l - 4)..=(l - 4)).step_by(2) {
            let b = BlockLabel::new(k, l);
            let ode = reduce_to_ode(b).unwrap();
            assert_eq!(ode, SecondOrderODE::hypergeometric(b), "{b}");
            assert!(ode.principal_part_matches_quoted());
            assert_eq!(ode.p1, RatFunc::poly(Poly::from_ints(&[6, 7])));
            assert_eq!(ode.discrepancy_from_quoted(), offset);
        }
    }
}

#[test]
fn hypergeometric_form_annihilates_closed_form() {
    // u^{L/2−2}(1+u)^{K/2−1}F(h−1, h+1; L+2; −u) with h = (K+L)/2, checked
    // with a truncated series evaluated independently at small u.
    let (k, l) = (2i64, 6i64);
    let h = (k + l) / 2;
    let f = |u: f64, d: usize| {
        let e = 1e-4;
        let g = |u: f64| {
            let (a, b, c) = ((h - 1) as f64, (h + 1) as f64, (l + 2) as f64);
            let (mut t, mut s) = (1.0, 1.0);
            for n in 0..200 {
                let n = n as f64;
                t *= (a + n) * (b + n) / ((c + n) * (n + 1.0)) * -u;
                s += t;
            }
            u.powf(l as f64 / 2.0 - 2.0) * (1.0 + u).powf(k as f64 / 2.0 - 1.0) * s
        };
        match d {
            0 => g(u),
            1 => (g(u + e) - g(u - e)) / (2.0 * e),
            _ => (g(u + e) - 2.0 * g(u) + g(u - e)) / (e * e),
        }
    };
    let ode = SecondOrderODE::hypergeometric(BlockLabel::new(k, l));
    for u in [0.1, 0.3, 0.6] {
        let r = ode.p2.eval_f64(u) * f(u, 2) + ode.p1.eval_f64(u) * f(u, 1) + ode.p0.eval_f64(u) * f(u, 0);
        assert!(r.abs() < 1e-4 * f(u, 0).abs(), "u = {u}: {r}");
    }
}

#[test]
fn indicial_table_at_8() {
    let d = indicial_data(BlockLabel::new(0, 8)).unwrap();
    let mut neg: Vec<i64> = d.lambdas.iter().map(|p| p.1).filter(|&x| x < 0).collect();
    let mut pos: Vec<i64> = d.lambdas.iter().map(|p| p.1).filter(|&x| x > 0).collect();
    neg.sort();
    pos.sort();
    assert_eq!(neg, vec![-11, -9, -7, -5]);
    assert_eq!(pos, vec![7, 9, 11, 13]);
    assert_eq!(d.origin_exponents.iter().min(), Some(&-14));
    assert_eq!(d.regular_exponent, Some(4));
    assert_eq!(d.rejected_exponent, -14);
    assert_eq!(d.decay_at_infinity, q(4));
}

#[test]
fn critical_weight_values() {
    assert_eq!(critical_weights(0.0).unwrap(), (0.0, 4.0));
    assert_eq!(critical_weights(-4.0).unwrap(), (2.0, 2.0));
    assert_eq!(critical_weights(5.0).unwrap(), (-1.0, 5.0));
    assert!(critical_weights(-5.0).is_err());
}

#[test]
fn dirac_square_order_zero() {
    let s = dirac_sq_order0_spectrum();
    assert_eq!(s.min_eigenvalue, q(6));
    assert_eq!(s.lambda_min, Q::from_integer(0.into()));
    assert_eq!(s.scalar_shift, q(-6));
    let mut m = s.minimizers.clone();
    m.sort();
    assert_eq!(m, vec![(-3, -1), (3, 1)]);
    assert_eq!(s.eigenvalue_at(3, -1), Some(&q(15)));
    // C(ρ₃) + 9/4 − (3/4)m₃² − (3/2)m₃m₊.
    for (m3, mp, e) in &s.eigenvalues {
        let formula = Q::new((60 + 9 - 3 * m3 * m3 - 6 * m3 * mp).into(), 4.into());
        assert_eq!(e, &formula, "({m3}, {mp})");
    }
}

#[test]
fn integration_matches_boundary_coefficient() {
    let p = integrate(BlockLabel::new(0, 4), 12.0, 32, 1.0).unwrap();
    let r = *p.r.last().unwrap();
    let s4 = r.sinh().powi(4) * p.components.last().unwrap()[0];
    assert!((s4 - 2.5).abs() < 1e-4 * 2.5);

    let p = integrate(BlockLabel::new(0, 8), 12.0, 64, 1.0).unwrap();
    assert!(p.max_constraint_residual() <= 1e-8);
    assert!(integrate(BlockLabel::new(7, 8), 12.0, 8, 1.0).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn closed_form_solves_the_system(l in 4i64..=14, j in 0i64..=10) {
        let k = -(l - 4) + 2 * (j % (l - 3));
        let b = BlockLabel::new(k, l);
        let radii: Vec<f64> = (0..64).map(|i| 0.1 + 4.9 * i as f64 / 63.0).collect();
        let worst = closed_form_residuals(b, &radii).unwrap().into_iter().fold(0.0, f64::max);
        prop_assert!(worst <= 1e-8, "{} residual {}", b, worst);
        prop_assert!(matches_operator_formula(&assemble_radial(b).unwrap()).unwrap());
    }
}
