//! Small worked cases, each checked against values computed by hand.

use std::sync::Arc;

use num_traits::Zero;

use opident::chebyshev::{cheb_u_monic, modified_moment_cheb, q_cheb, single_pole_eval};
use opident::identity::{
    jacobi_check, lhs_exact, matrix_m, matrix_n, rhs_exact, shifted_hankel_difference_check, uvarov_polynomial,
    verify_identity, y_vandermonde,
};
use opident::orthopoly::{bordered_hankel_poly, linear_hankel_poly};
use opident::ring::{det_field, det_generic, sign, vandermonde_product, Monomial, MAX_VARS};
use opident::{IdentityInstance, QFunctional, QMatrix, QPoly, QSystem, Rational, RingMatrix};

fn q(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

fn r(p: i64, d: i64) -> Rational {
    Rational::new(p.into(), d.into())
}

fn poly(c: &[i64]) -> QPoly {
    QPoly::new(c.iter().map(|&v| q(v)).collect(), "x")
}

fn w(e: u16) -> Monomial {
    let mut m = [0; MAX_VARS];
    m[0] = e;
    m
}

fn catalan() -> Arc<QFunctional> {
    Arc::new(QFunctional::chebyshev())
}

fn two_atoms() -> Arc<QFunctional> {
    Arc::new(QFunctional::finite_atom(vec![(q(1), r(1, 2)), (q(-1), r(1, 2))]).unwrap())
}

#[test]
fn polynomial_basics() {
    let u2 = cheb_u_monic::<Rational>(2);
    assert_eq!(u2, poly(&[-1, 0, 1]));
    assert_eq!(u2.eval(&q(1)), q(0));
    assert_eq!(u2.eval(&q(2)), q(3));
    assert_eq!(QPoly::zero().eval(&r(7, 3)), q(0));
    assert_eq!(poly(&[0, 0, 0, 1]).derivative(1), poly(&[0, 0, 3]));
    assert!(poly(&[0, 0, 0, 1]).derivative(4).is_zero());
    assert_eq!(cheb_u_monic::<Rational>(3).derivative(2), poly(&[0, 6]));
}

#[test]
fn determinant_basics() {
    let empty: QMatrix = RingMatrix::new(0, 0, vec![]).unwrap();
    assert_eq!(det_generic(&empty).unwrap(), q(1));
    let hankel = RingMatrix::from_fn(4, 4, |i, j| QFunctional::chebyshev().moment(2 * (i + j)).unwrap());
    // C_{i+j}, 0 <= i,j <= 3
    assert_eq!(det_field(&hankel).unwrap(), q(1));
    let m = RingMatrix::from_rows(vec![vec![q(1), q(1)], vec![q(1), q(2)]]).unwrap();
    assert_eq!(det_generic(&m).unwrap(), q(1));
    let rank_one = RingMatrix::from_rows(vec![vec![q(1), q(2)], vec![q(2), q(4)]]).unwrap();
    assert_eq!(det_field(&rank_one).unwrap(), q(0));
    assert_eq!(vandermonde_product::<Rational>(&[]), q(1));
    assert_eq!(vandermonde_product(&[q(5)]), q(1));
    assert_eq!(vandermonde_product(&[q(1), q(3), q(4)]), q(6));
    // reversed orientation for the y's
    assert_eq!(y_vandermonde(&[q(1), q(3), q(4)]), q(-6));
    assert_eq!(y_vandermonde(&[q(1), q(3)]), q(-2));
}

#[test]
fn moments_and_hankels() {
    let c = catalan();
    assert_eq!(c.moment(8).unwrap(), q(14));
    assert_eq!(c.moment(5).unwrap(), q(0));
    assert_eq!(two_atoms().moment(2).unwrap(), q(1));
    assert_eq!(c.apply(&QPoly::constant(q(1))).unwrap(), q(1));
    let u2 = poly(&[-1, 0, 1]);
    assert_eq!(c.apply(&(u2.clone() * &u2)).unwrap(), q(1));
    assert_eq!(c.apply(&(u2 * &poly(&[0, 1]))).unwrap(), q(0));
    assert_eq!(c.hankel_det(0).unwrap(), q(1));
    assert_eq!(c.hankel_det(4).unwrap(), q(1));
    assert_eq!(two_atoms().hankel_det(3).unwrap(), q(0));
}

#[test]
fn modified_moments() {
    let c = catalan();
    assert_eq!(c.modified_moment_series(0, &[], 0, 10).unwrap().coeff(&w(0)), q(1));
    let s = c.modified_moment_series(0, &[], 1, 6).unwrap();
    // -(w + C_1 w^3 + C_2 w^5), cut below degree 6
    assert_eq!(s.coeff(&w(1)), q(-1));
    assert_eq!(s.coeff(&w(2)), q(0));
    assert_eq!(s.coeff(&w(3)), q(-1));
    assert_eq!(s.coeff(&w(5)), q(-2));
    assert_eq!(s.order(), Some(6));
    let one = QFunctional::finite_atom(vec![(q(0), q(1))]).unwrap();
    assert_eq!(one.modified_moment(0, &[q(3)], &[q(2)]).unwrap(), r(3, 2));
    assert_eq!(c.modified_hankel_det(0, &[q(1)], &[]).unwrap(), q(1));
    assert_eq!(c.modified_hankel_det_series(3, &[], 0, 5).unwrap().coeff(&w(0)), c.hankel_det(3).unwrap());
}

#[test]
fn orthogonal_systems() {
    let sys = QSystem::build(catalan(), 4).unwrap();
    assert!(sys.s().iter().all(Zero::is_zero));
    assert_eq!(sys.t(), &[q(1), q(1), q(1)]);
    assert_eq!(sys.p(2).unwrap(), &poly(&[-1, 0, 1]));
    assert_eq!(sys.p(3).unwrap(), &poly(&[0, -2, 0, 1]));

    let two = QSystem::build(two_atoms(), 2).unwrap();
    assert_eq!(two.p(1).unwrap(), &poly(&[0, 1]));
    assert_eq!(two.p(2).unwrap(), &poly(&[-1, 0, 1]));
    assert_eq!(two.t(), &[q(1)]);

    let skew = Arc::new(QFunctional::sequence(vec![q(1), q(3), q(11)]));
    assert_eq!(QSystem::build(skew, 1).unwrap().p(1).unwrap(), &poly(&[-3, 1]));

    let c = catalan();
    assert_eq!(bordered_hankel_poly(&c, 0).unwrap(), poly(&[1]));
    assert_eq!(bordered_hankel_poly(&c, 2).unwrap(), poly(&[-1, 0, 1]));
    let f = QFunctional::sequence(vec![q(2), q(5), q(1)]);
    assert_eq!(bordered_hankel_poly(&f, 1).unwrap(), QPoly::new(vec![r(-5, 2), q(1)], "x"));
    assert_eq!(linear_hankel_poly(&c, 0).unwrap(), poly(&[1]));
    assert_eq!(linear_hankel_poly(&f, 1).unwrap(), poly(&[5, -2]));
    // [[-x, 1], [1, -x]]
    assert_eq!(linear_hankel_poly(&c, 2).unwrap(), poly(&[-1, 0, 1]));
}

#[test]
fn second_kind_functions() {
    let one = QSystem::build(Arc::new(QFunctional::finite_atom(vec![(q(0), q(1))]).unwrap()), 0).unwrap();
    assert_eq!(one.q_exact(0, &q(2)).unwrap(), r(1, 2));
    assert_eq!(one.q_derivative_exact(0, 1, &q(2)).unwrap(), r(-1, 4));
    let two = QSystem::build(two_atoms(), 2).unwrap();
    assert_eq!(two.q_exact(1, &q(3)).unwrap(), r(1, 8));
    assert_eq!(two.q_derivative_exact(1, 0, &q(3)).unwrap(), r(1, 8));

    let cat = QSystem::build(catalan(), 4).unwrap();
    let q0 = cat.q_series(0, 0, 5).unwrap();
    assert_eq!(
        (1..5).map(|e| q0.coeff(&w(e))).collect::<Vec<_>>(),
        vec![q(1), q(0), q(1), q(0)]
    );
    for n in 0..4 {
        let s = cat.q_series(n, 0, n as u32 + 6).unwrap();
        assert_eq!(s.valuation(), Some(n as u32 + 1));
        assert_eq!(s.coeff(&w(n as u16 + 1)), q(1));
    }
}

#[test]
fn theorem_matrix_shapes() {
    let f = Arc::new(QFunctional::finite_atom(vec![(q(-2), q(1)), (q(0), q(1)), (q(1), q(2)), (q(3), q(1))]).unwrap());
    let sys = QSystem::build(f, 4).unwrap();
    assert_eq!(matrix_m(&sys, 2, &[], &[]).unwrap().rows(), 0);
    assert_eq!(matrix_m(&sys, 2, &[q(5)], &[]).unwrap().get(0, 0), &sys.p(2).unwrap().eval(&q(5)));
    assert_eq!(matrix_m(&sys, 2, &[], &[q(7)]).unwrap().get(0, 0), &sys.q_exact(1, &q(7)).unwrap());
    assert_eq!(matrix_n(&sys, 0, &[], &[q(7)]).unwrap(), RingMatrix::from_rows(vec![vec![q(1)]]).unwrap());
    assert_eq!(
        matrix_n(&sys, 0, &[], &[q(7), q(9)]).unwrap(),
        RingMatrix::from_rows(vec![vec![q(7), q(1)], vec![q(9), q(1)]]).unwrap()
    );
    // n = k - 1: one power column, holding y^0
    let m = matrix_n(&sys, 1, &[q(5)], &[q(7), q(9)]).unwrap();
    assert_eq!(m.get(0, 0), &q(0));
    assert_eq!(m.get(1, 0), &q(1));
    assert_eq!(m.get(2, 0), &q(1));
    assert!(matrix_m(&sys, 1, &[], &[q(7), q(9)]).is_err());
    assert_eq!(matrix_n(&sys, 2, &[], &[q(7), q(9)]).unwrap(), matrix_m(&sys, 2, &[], &[q(7), q(9)]).unwrap());

    assert_eq!(rhs_exact(&sys, 3, &[], &[]).unwrap(), q(1));
    for n in 0..4 {
        let rhs = rhs_exact(&sys, n, &[q(5)], &[]).unwrap();
        assert_eq!(rhs, sign::<Rational>(n) * sys.p(n).unwrap().eval(&q(5)));
    }
    assert_eq!(lhs_exact(&sys, 0, &[q(5)], &[q(7)]).unwrap(), q(1));
    assert_eq!(lhs_exact(&sys, 3, &[], &[]).unwrap(), q(1));
}

#[test]
fn single_atom_single_pole() {
    let f = Arc::new(QFunctional::finite_atom(vec![(q(0), q(1))]).unwrap());
    let sys = QSystem::build(f, 0).unwrap();
    assert_eq!(lhs_exact(&sys, 1, &[], &[q(2)]).unwrap(), r(-1, 2));
    assert_eq!(rhs_exact(&sys, 1, &[], &[q(2)]).unwrap(), r(-1, 2));
    assert!(verify_identity(&sys, &IdentityInstance::exact(1, vec![], vec![q(2)])).passed());
}

#[test]
fn formal_single_pole_leading_term() {
    let sys = QSystem::build(catalan(), 3).unwrap();
    for n in 1..4 {
        let rep = verify_identity(&sys, &IdentityInstance::formal(n, vec![], 1, 12));
        assert!(rep.passed(), "{rep}");
        assert!(rep.rhs.starts_with(if n % 2 == 0 { "y1^-" } else { "-y1^-" }), "{}", rep.rhs);
    }
}

#[test]
fn unmodified_uvarov_polynomial() {
    let f = Arc::new(QFunctional::finite_atom(vec![(q(-1), q(1)), (q(0), q(3)), (q(2), q(1)), (q(4), q(2))]).unwrap());
    let sys = QSystem::build(f, 4).unwrap();
    for n in 0..4 {
        let p = uvarov_polynomial(&sys, n, &[], &[]).unwrap();
        assert_eq!(p, sys.p(n).unwrap().scale(&sign(n)));
    }
}

#[test]
fn condensation_lemmas_by_hand() {
    let c = [q(2), q(3), q(-1)];
    let rep = shifted_hankel_difference_check(&c, 1);
    assert!(rep.passed());
    // (beta - alpha) c_0
    assert_eq!(rep.lhs, "-2*alpha + 2*beta");
    let a = RingMatrix::from_rows(vec![vec![q(2), q(7)], vec![q(1), q(5)]]).unwrap();
    let rep = jacobi_check(&a, 1, 2, 1, 2);
    assert_eq!(rep.lhs, "3");
    assert_eq!(rep.rhs, "3");
    let twin = RingMatrix::from_rows(vec![vec![q(1), q(2), q(3)], vec![q(1), q(2), q(3)], vec![q(0), q(4), q(5)]]).unwrap();
    let rep = jacobi_check(&twin, 1, 3, 2, 3);
    assert!(rep.passed());
    assert_eq!(rep.lhs, "0");
}

#[test]
fn chebyshev_examples() {
    let x = |c0: i64, c1: i64| QPoly::new(vec![q(c0), q(c1)], "X");
    assert_eq!(modified_moment_cheb(0, &q(3)), x(0, 1));
    assert_eq!(modified_moment_cheb(2, &q(-1)), x(2, 4));
    assert_eq!(q_cheb(0, &q(3)), x(0, -1));
    assert_eq!(q_cheb(1, &q(-1)), x(-1, -2));
    let one = single_pole_eval(1, &r(1, 2));
    assert_eq!(one.lhs, x(0, 1));
    assert_eq!(one.rhs, x(0, 1));
}
