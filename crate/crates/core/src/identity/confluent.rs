//! The identity at repeated parameters. A parameter repeated `a` times
//! contributes `a` rows of scaled derivatives `f^{(i)}(v) / i!` instead of
//! `a` copies of the same row, and the Vandermonde products only keep the
//! factors between distinct parameters.

use std::time::Instant;


use super::{assemble, check_depth, fmt_list, lhs_exact, theorem_sign};
use crate::orthopoly::OrthoSystem;
use crate::report::VerificationReport;
use crate::ring::{binomial, det_field, factorial, sign, Ring, RingMatrix, Scalar};
use crate::{Error, Result};

/// Distinct parameters with multiplicities.
#[derive(Clone, Debug, PartialEq)]
pub struct ConfluentInstance<K> {
    pub n: usize,
    /// `(xi_i, m_i)`.
    pub xis: Vec<(K, usize)>,
    /// `(omega_i, k_i)`.
    pub omegas: Vec<(K, usize)>,
}

impl<K: Scalar> ConfluentInstance<K> {
    pub fn k(&self) -> usize {
        self.omegas.iter().map(|(_, a)| a).sum()
    }

    pub fn m(&self) -> usize {
        self.xis.iter().map(|(_, a)| a).sum()
    }

    /// The parameters with repetitions spelled out.
    pub fn expanded(&self) -> (Vec<K>, Vec<K>) {
        let spell = |v: &[(K, usize)]| v.iter().flat_map(|(p, a)| std::iter::repeat_n(p.clone(), *a)).collect();
        (spell(&self.xis), spell(&self.omegas))
    }

    fn validate(&self) -> Result<()> {
        for list in [&self.xis, &self.omegas] {
            for (i, (p, a)) in list.iter().enumerate() {
                if *a == 0 {
                    return Err(Error::Invalid(format!("parameter {p} has multiplicity 0")));
                }
                if list[..i].iter().any(|(q, _)| q == p) {
                    return Err(Error::Coincident(format!("{p} listed twice; merge the multiplicities")));
                }
            }
        }
        Ok(())
    }
}

/// Rows `p_b^{(i)}(xi) / i!` for each `xi`, then `q_b^{(i)}(omega) / i!` for
/// each `omega`, over the same columns as the non-confluent matrix. For
/// `b < 0`, `p_b = 0` and `q_b(omega) = omega^{-b-1}`.
pub fn confluent_matrix<K: Scalar>(sys: &OrthoSystem<K>, inst: &ConfluentInstance<K>) -> Result<RingMatrix<K>> {
    inst.validate()?;
    let (k, m) = (inst.k(), inst.m());
    check_depth(sys, inst.n, m)?;
    let rows = |v: &[(K, usize)]| -> Vec<(K, usize)> {
        v.iter().flat_map(|(p, a)| (0..*a).map(move |i| (p.clone(), i))).collect()
    };
    let (xrows, yrows) = (rows(&inst.xis), rows(&inst.omegas));
    assemble(
        inst.n,
        k,
        m,
        |r, b| {
            let (xi, i) = &xrows[r];
            if b < 0 {
                return Ok(K::zero());
            }
            let d = sys.p(b as usize)?.derivative(*i);
            Ok(d.eval(xi) / &K::from_bigint(&factorial(*i as u32)))
        },
        |r, b| {
            let (omega, i) = &yrows[r];
            if b < 0 {
                let e = (-b - 1) as u32;
                let i = *i as u32;
                if i > e {
                    return Ok(K::zero());
                }
                return Ok(K::from_bigint(&binomial(e, i)) * &Ring::pow(omega, e - i));
            }
            let d = sys.q_derivative_exact(b as usize, *i, omega)?;
            Ok(d / &K::from_bigint(&factorial(*i as u32)))
        },
    )
}

/// `sign * det / (prod_{i<j} (xi_j - xi_i)^{m_i m_j} prod_{i<j} (omega_i - omega_j)^{k_i k_j})`.
///
/// Besides the usual sign this carries `(-1)^{sum binom(k_i, 2)}`: inside a
/// block of `k_i` merged `y`s the reversed orientation `y_i - y_j` of the
/// `y`-Vandermonde contributes one sign per pair, which the derivative rows
/// do not absorb.
pub fn confluent_rhs<K: Scalar>(sys: &OrthoSystem<K>, inst: &ConfluentInstance<K>) -> Result<K> {
    let det = det_field(&confluent_matrix(sys, inst)?)?;
    let mut den = K::one();
    for j in 0..inst.xis.len() {
        for i in 0..j {
            let (xi, mi) = &inst.xis[i];
            let (xj, mj) = &inst.xis[j];
            den = den * &Ring::pow(&(xj.clone() - xi), (mi * mj) as u32);
        }
    }
    for j in 0..inst.omegas.len() {
        for i in 0..j {
            let (oi, ki) = &inst.omegas[i];
            let (oj, kj) = &inst.omegas[j];
            den = den * &Ring::pow(&(oi.clone() - oj), (ki * kj) as u32);
        }
    }
    let cluster: usize = inst.omegas.iter().map(|(_, a)| a * a.saturating_sub(1) / 2).sum();
    let s = theorem_sign::<K>(inst.n, inst.k(), inst.m()) * &sign::<K>(cluster);
    Ok(s * &det / &den)
}

/// Compares [`confluent_rhs`] with the modified Hankel determinant evaluated
/// directly at the repeated parameters.
pub fn verify_confluent<K: Scalar>(sys: &OrthoSystem<K>, inst: &ConfluentInstance<K>) -> VerificationReport {
    let start = Instant::now();
    let (xs, ys) = inst.expanded();
    let pairs = |v: &[(K, usize)]| fmt_list(&v.iter().map(|(p, a)| format!("{p}^{a}")).collect::<Vec<_>>());
    let report = VerificationReport::new("confluent")
        .param("n", inst.n)
        .param("k", inst.k())
        .param("m", inst.m())
        .param("xs", pairs(&inst.xis))
        .param("ys", pairs(&inst.omegas));
    let mut report = match (lhs_exact(sys, inst.n, &xs, &ys), confluent_rhs(sys, inst)) {
        (Ok(l), Ok(r)) => {
            let eq = l == r;
            report.sides(l, r, eq)
        }
        (Err(e), _) | (_, Err(e)) => report.failed(e),
    };
    report.elapsed = start.elapsed();
    report
}
