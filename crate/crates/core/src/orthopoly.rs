//! Monic orthogonal polynomials of a moment functional, their recurrence
//! coefficients, and the second-kind functions `q_n(y) = L(p_n(u) / (y - u))`.

use std::sync::Arc;

use crate::moments::MomentFunctional;
use crate::ring::{det_generic, factorial, sign, InverseSeries, Monomial, Ring, RingMatrix, Scalar, UniPoly, MAX_VARS};
use crate::{Error, Result};

/// `p_0, ..., p_depth` with `p_n = (x - s_{n-1}) p_{n-1} - t_{n-2} p_{n-2}`.
#[derive(Clone, Debug)]
pub struct OrthoSystem<K> {
    functional: Arc<MomentFunctional<K>>,
    s: Vec<K>,
    t: Vec<K>,
    p: Vec<UniPoly<K>>,
}

impl<K: Scalar> OrthoSystem<K> {
    /// Runs the recurrence up to `p_depth`.
    ///
    /// Needs `H(1), ..., H(depth)` nonzero. `s_n` comes from
    /// `L(x p_n^2) / L(p_n^2)`; `t_{n-1}` is computed both as
    /// `L(p_n^2) / L(p_{n-1}^2)` and as `H(n+1) H(n-1) / H(n)^2`, and the two
    /// must agree. Every `p_n` is checked to annihilate `x^j` for `j < n`.
    pub fn build(functional: Arc<MomentFunctional<K>>, depth: usize) -> Result<Self> {
        functional.require(2 * depth.max(1) - 1)?;
        let mut hankel = Vec::with_capacity(depth + 1);
        for j in 0..=depth {
            let h = functional.hankel_det(j)?;
            if h.is_zero() {
                return Err(Error::Degenerate(j));
            }
            hankel.push(h);
        }

        let x = UniPoly::var("x");
        let mut p: Vec<UniPoly<K>> = vec![UniPoly::constant(K::one())];
        let mut s = Vec::with_capacity(depth);
        let mut t = Vec::with_capacity(depth.saturating_sub(1));
        let mut norm_prev: Option<K> = None;
        for n in 0..depth {
            let pn = &p[n];
            let sq = pn.clone() * pn;
            let norm = functional.apply(&sq)?;
            if norm.is_zero() {
                return Err(Error::Degenerate(n + 1));
            }
            s.push(functional.apply(&(sq * &x))? / &norm);
            if let Some(prev) = &norm_prev {
                let by_norms = norm.clone() / prev;
                let by_hankel = hankel[n + 1].clone() * &hankel[n - 1] / &(hankel[n].clone() * &hankel[n]);
                if by_norms != by_hankel {
                    return Err(Error::Invalid(format!(
                        "recurrence coefficient t_{} disagrees: {by_norms} from norms, {by_hankel} from Hankel determinants",
                        n - 1
                    )));
                }
                t.push(by_norms);
            }
            let mut next = (x.clone() - &UniPoly::constant(s[n].clone())) * &p[n];
            if n >= 1 {
                next = next - &p[n - 1].scale(&t[n - 1]);
            }
            p.push(next.with_var("x"));
            norm_prev = Some(norm);
        }

        let sys = OrthoSystem { functional, s, t, p };
        for n in 1..=depth {
            for j in 0..n {
                let v = sys.functional.apply(&(sys.p[n].clone() * &UniPoly::monomial(K::one(), j, "x")))?;
                if !v.is_zero() {
                    return Err(Error::Invalid(format!("p_{n} is not orthogonal to x^{j}: {v}")));
                }
            }
        }
        Ok(sys)
    }

    pub fn functional(&self) -> &MomentFunctional<K> {
        &self.functional
    }

    pub fn functional_arc(&self) -> &Arc<MomentFunctional<K>> {
        &self.functional
    }

    /// Largest `n` for which `p_n` is available.
    pub fn depth(&self) -> usize {
        self.p.len() - 1
    }

    pub fn s(&self) -> &[K] {
        &self.s
    }

    pub fn t(&self) -> &[K] {
        &self.t
    }

    pub fn p(&self, n: usize) -> Result<&UniPoly<K>> {
        self.p.get(n).ok_or_else(|| {
            Error::Invalid(format!("p_{n} requested but the system only reaches p_{}", self.depth()))
        })
    }

    /// `p_b`, with `p_b = 0` for negative `b`.
    pub fn p_signed(&self, b: isize) -> Result<UniPoly<K>> {
        if b < 0 {
            Ok(UniPoly::new(vec![], "x"))
        } else {
            self.p(b as usize).cloned()
        }
    }

    fn atoms(&self) -> Result<&[(K, K)]> {
        self.functional
            .atoms()
            .ok_or_else(|| Error::Mode("exact q-values need a finite-atom functional".into()))
    }

    /// `q_n(y) = sum_a w_a p_n(u_a) / (y - u_a)`.
    pub fn q_exact(&self, n: usize, y: &K) -> Result<K> {
        self.q_derivative_exact(n, 0, y)
    }

    /// `r`-th derivative of `q_n` at `y`:
    /// `sum_a w_a p_n(u_a) (-1)^r r! / (y - u_a)^{r+1}`.
    pub fn q_derivative_exact(&self, n: usize, r: usize, y: &K) -> Result<K> {
        let pn = self.p(n)?;
        let scale = sign::<K>(r) * &K::from_bigint(&factorial(r as u32));
        let mut acc = K::zero();
        for (u, w) in self.atoms()? {
            if u == y {
                return Err(Error::Pole(u.to_string()));
            }
            let d = Ring::pow(&(y.clone() - u), r as u32 + 1);
            acc = acc + &(w.clone() * &pn.eval(u) / &d);
        }
        Ok(acc * &scale)
    }

    /// `q_n` as a series in `w = 1/y_var`, known to degree `< truncation`:
    /// `sum_i L(p_n x^i) w^{i+1}`. Terms with `i < n` vanish by
    /// orthogonality and the first surviving one is `H(n+1)/H(n) w^{n+1}`.
    pub fn q_series(&self, n: usize, var: usize, truncation: u32) -> Result<InverseSeries<K>> {
        if var >= MAX_VARS {
            return Err(Error::Invalid(format!("series variable {var} out of range")));
        }
        let pn = self.p(n)?;
        let terms = truncation.saturating_sub(1) as usize;
        if terms > 0 {
            self.functional.require(n + terms - 1)?;
        }
        let mut out = Vec::with_capacity(terms);
        for i in 0..terms {
            let c = pn
                .coeffs()
                .iter()
                .enumerate()
                .try_fold(K::zero(), |acc, (d, pd)| Ok::<K, Error>(acc + &(pd.clone() * &self.functional.moment(i + d)?)))?;
            let mut mono: Monomial = [0; MAX_VARS];
            mono[var] = (i + 1) as u16;
            out.push((mono, c));
        }
        Ok(InverseSeries::from_terms(Some(truncation), out))
    }
}

/// `det [mu_{i+j}; 1 x ... x^n] / H(n)`, the bordered-Hankel formula for the
/// monic orthogonal polynomial of degree `n`.
pub fn bordered_hankel_poly<K: Scalar>(f: &MomentFunctional<K>, n: usize) -> Result<UniPoly<K>> {
    let h = f.hankel_det(n)?;
    if h.is_zero() {
        return Err(Error::Degenerate(n));
    }
    let mu = f.moments((2 * n).max(1))?;
    let m = RingMatrix::from_fn(n + 1, n + 1, |i, j| {
        if i < n {
            UniPoly::constant(mu[i + j].clone())
        } else {
            UniPoly::monomial(K::one(), j, "x")
        }
    });
    Ok(det_generic(&m)?.scale(&h.inv()).with_var("x"))
}

/// `det (mu_{i+j+1} - mu_{i+j} x)_{0 <= i,j < n}`, which equals
/// `(-1)^n H(n) p_n(x)`.
pub fn linear_hankel_poly<K: Scalar>(f: &MomentFunctional<K>, n: usize) -> Result<UniPoly<K>> {
    let mu = f.moments(2 * n)?;
    let m = RingMatrix::from_fn(n, n, |i, j| UniPoly::new(vec![mu[i + j + 1].clone(), -mu[i + j].clone()], "x"));
    Ok(det_generic(&m)?.with_var("x"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{QFunctional, QPoly, QSystem, Rational};
    use num_traits::FromPrimitive;

    fn q(n: i64) -> Rational {
        Rational::from_i64(n).unwrap()
    }

    fn r(p: i64, d: i64) -> Rational {
        Rational::new(p.into(), d.into())
    }

    fn poly(c: &[i64]) -> QPoly {
        UniPoly::new(c.iter().map(|&v| q(v)).collect(), "x")
    }

    #[test]
    fn chebyshev_system() {
        let sys = QSystem::build(Arc::new(QFunctional::chebyshev()), 4).unwrap();
        assert_eq!(sys.s(), [q(0), q(0), q(0), q(0)]);
        assert_eq!(sys.t(), [q(1), q(1), q(1)]);
        assert_eq!(sys.p(2).unwrap(), &poly(&[-1, 0, 1]));
        assert_eq!(sys.p(3).unwrap(), &poly(&[0, -2, 0, 1]));
    }

    #[test]
    fn two_atoms() {
        let f = QFunctional::finite_atom(vec![(q(1), r(1, 2)), (q(-1), r(1, 2))]).unwrap();
        let sys = QSystem::build(Arc::new(f), 2).unwrap();
        assert_eq!(sys.p(1).unwrap(), &poly(&[0, 1]));
        assert_eq!(sys.p(2).unwrap(), &poly(&[-1, 0, 1]));
        assert_eq!(sys.t(), [q(1)]);
        assert_eq!(sys.q_exact(1, &q(3)).unwrap(), r(1, 8));
    }

    #[test]
    fn first_polynomial() {
        let f = QFunctional::sequence(vec![q(1), q(5), q(30)]);
        let sys = QSystem::build(Arc::new(f), 1).unwrap();
        assert_eq!(sys.p(1).unwrap(), &poly(&[-5, 1]));
    }

    #[test]
    fn degenerate_is_named() {
        let f = QFunctional::sequence(vec![q(1), q(1), q(1), q(1)]);
        assert_eq!(QSystem::build(Arc::new(f), 2).unwrap_err(), Error::Degenerate(2));
    }

    #[test]
    fn single_atom_q() {
        let f = QFunctional::finite_atom(vec![(q(0), q(1))]).unwrap();
        let sys = QSystem::build(Arc::new(f), 1).unwrap();
        assert_eq!(sys.q_exact(0, &q(2)).unwrap(), r(1, 2));
        assert_eq!(sys.q_derivative_exact(0, 1, &q(2)).unwrap(), r(-1, 4));
        assert_eq!(sys.q_exact(0, &q(0)), Err(Error::Pole("0".into())));
    }

    #[test]
    fn catalan_q_series() {
        let sys = QSystem::build(Arc::new(QFunctional::chebyshev()), 2).unwrap();
        let q0 = sys.q_series(0, 0, 5).unwrap();
        assert_eq!(q0.terms().len(), 2);
        assert_eq!(q0.coeff(&[1, 0, 0, 0]), q(1));
        assert_eq!(q0.coeff(&[3, 0, 0, 0]), q(1));
        let q2 = sys.q_series(2, 1, 8).unwrap();
        assert_eq!(q2.valuation(), Some(3));
    }

    #[test]
    fn lemma_polynomials() {
        let f = QFunctional::chebyshev();
        assert_eq!(bordered_hankel_poly(&f, 0).unwrap(), poly(&[1]));
        assert_eq!(bordered_hankel_poly(&f, 2).unwrap(), poly(&[-1, 0, 1]));
        assert_eq!(linear_hankel_poly(&f, 0).unwrap(), poly(&[1]));
        // det [[-x, 1], [1, -x]]
        assert_eq!(linear_hankel_poly(&f, 2).unwrap(), poly(&[-1, 0, 1]));
        let g = QFunctional::sequence(vec![q(2), q(3), q(7)]);
        assert_eq!(bordered_hankel_poly(&g, 1).unwrap(), UniPoly::new(vec![r(-3, 2), q(1)], "x"));
        assert_eq!(linear_hankel_poly(&g, 1).unwrap(), poly(&[3, -2]));
    }
}
