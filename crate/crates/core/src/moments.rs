//! Moment functionals, their Hankel determinants, and moments modified by a
//! rational factor `prod (u - x_l) / prod (u - y_l)`.

use std::sync::Mutex;

use serde::Deserialize;

use crate::ring::{det_field, det_generic, InverseSeries, Monomial, RingMatrix, Scalar, UniPoly, MAX_VARS};
use crate::{Error, Result};

/// Where the moments come from.
#[derive(Clone, Debug, PartialEq)]
pub enum Backend<K> {
    /// `sum_a w_a delta_{u_a}` as `(node, weight)` pairs.
    FiniteAtom(Vec<(K, K)>),
    /// Explicit `mu_0, ..., mu_N`.
    Sequence(Vec<K>),
    /// Chebyshev-U weight: `mu_{2j} = C_j`, odd moments vanish.
    ChebyshevCatalan,
}

#[derive(Debug, Default)]
struct Memo<K> {
    moments: Vec<K>,
    hankel: Vec<K>,
}

/// Linear functional on polynomials determined by its moments `mu_n`.
///
/// Moments and Hankel determinants are memoized behind a mutex, so a shared
/// functional can be queried from several threads.
#[derive(Debug)]
pub struct MomentFunctional<K> {
    backend: Backend<K>,
    memo: Mutex<Memo<K>>,
}

impl<K: Clone> Clone for MomentFunctional<K> {
    fn clone(&self) -> Self {
        let memo = self.memo.lock().expect("memo lock");
        MomentFunctional {
            backend: self.backend.clone(),
            memo: Mutex::new(Memo { moments: memo.moments.clone(), hankel: memo.hankel.clone() }),
        }
    }
}

impl<K: Scalar> MomentFunctional<K> {
    fn from_backend(backend: Backend<K>) -> Self {
        MomentFunctional { backend, memo: Mutex::new(Memo { moments: vec![], hankel: vec![] }) }
    }

    /// Nodes must be pairwise distinct and weights nonzero.
    pub fn finite_atom(atoms: Vec<(K, K)>) -> Result<Self> {
        for (i, (u, w)) in atoms.iter().enumerate() {
            if w.is_zero() {
                return Err(Error::Invalid(format!("atom {u} has zero weight")));
            }
            if atoms[..i].iter().any(|(v, _)| v == u) {
                return Err(Error::Invalid(format!("repeated atom node {u}")));
            }
        }
        Ok(Self::from_backend(Backend::FiniteAtom(atoms)))
    }

    pub fn sequence(moments: Vec<K>) -> Self {
        Self::from_backend(Backend::Sequence(moments))
    }

    pub fn chebyshev() -> Self {
        Self::from_backend(Backend::ChebyshevCatalan)
    }

    pub fn backend(&self) -> &Backend<K> {
        &self.backend
    }

    pub fn atoms(&self) -> Option<&[(K, K)]> {
        match &self.backend {
            Backend::FiniteAtom(a) => Some(a),
            _ => None,
        }
    }

    /// Largest moment index available; `None` when unbounded.
    pub fn horizon(&self) -> Option<usize> {
        match &self.backend {
            Backend::Sequence(m) => Some(m.len().saturating_sub(1)),
            _ => None,
        }
    }

    /// Errors unless `mu_needed` is available.
    pub fn require(&self, needed: usize) -> Result<()> {
        match &self.backend {
            Backend::Sequence(m) if needed >= m.len() => Err(Error::Horizon {
                needed,
                available: m.len().saturating_sub(1),
            }),
            _ => Ok(()),
        }
    }

    fn compute_moment(&self, n: usize) -> K {
        match &self.backend {
            Backend::FiniteAtom(atoms) => atoms
                .iter()
                .fold(K::zero(), |acc, (u, w)| acc + &(w.clone() * &crate::Ring::pow(u, n as u32))),
            Backend::Sequence(m) => m[n].clone(),
            Backend::ChebyshevCatalan if n % 2 == 1 => K::zero(),
            Backend::ChebyshevCatalan => K::from_bigint(&crate::ring::catalan(n as u32 / 2)),
        }
    }

    pub fn moment(&self, n: usize) -> Result<K> {
        self.require(n)?;
        let mut memo = self.memo.lock().expect("memo lock");
        while memo.moments.len() <= n {
            let next = self.compute_moment(memo.moments.len());
            memo.moments.push(next);
        }
        Ok(memo.moments[n].clone())
    }

    /// `mu_0, ..., mu_{len-1}`.
    pub fn moments(&self, len: usize) -> Result<Vec<K>> {
        if len == 0 {
            return Ok(vec![]);
        }
        self.moment(len - 1)?;
        Ok(self.memo.lock().expect("memo lock").moments[..len].to_vec())
    }

    /// `L(p) = sum_i p_i mu_i`.
    pub fn apply(&self, p: &UniPoly<K>) -> Result<K> {
        let mu = self.moments(p.coeffs().len())?;
        Ok(p.coeffs().iter().zip(&mu).fold(K::zero(), |acc, (c, m)| acc + &(c.clone() * m)))
    }

    /// `H(n) = det (mu_{i+j})_{0 <= i,j < n}`; `H(0) = 1`.
    pub fn hankel_det(&self, n: usize) -> Result<K> {
        if let Some(h) = self.memo.lock().expect("memo lock").hankel.get(n) {
            return Ok(h.clone());
        }
        let mu = self.moments((2 * n).max(1) - 1)?;
        let mut computed = Vec::new();
        let start = self.memo.lock().expect("memo lock").hankel.len();
        for j in start..=n {
            let m = RingMatrix::from_fn(j, j, |r, c| mu[r + c].clone());
            computed.push(det_field(&m)?);
        }
        let mut memo = self.memo.lock().expect("memo lock");
        if memo.hankel.len() == start {
            memo.hankel.extend(computed);
        }
        Ok(memo.hankel[n].clone())
    }

    /// `L(u^i prod_l (u - x_l) / prod_l (u - y_l))` for a finite-atom
    /// functional at rational `y_l`.
    pub fn modified_moment(&self, i: usize, xs: &[K], ys: &[K]) -> Result<K> {
        let atoms = self
            .atoms()
            .ok_or_else(|| Error::Mode("exact modified moments need a finite-atom functional".into()))?;
        let mut acc = K::zero();
        for (u, w) in atoms {
            let mut den = K::one();
            for y in ys {
                if y == u {
                    return Err(Error::Pole(u.to_string()));
                }
                den = den * &(u.clone() - y);
            }
            let num = xs
                .iter()
                .fold(crate::Ring::pow(u, i as u32), |acc, x| acc * &(u.clone() - x));
            acc = acc + &(w.clone() * &num / &den);
        }
        Ok(acc)
    }

    /// The same moment with `k` formal `y_l`, as a series in `w_l = 1/y_l`
    /// known to total degree `< truncation`.
    ///
    /// Expands `1 / (u - y) = -sum_t u^t w^{t+1}`, so the coefficient of
    /// `prod w_l^{t_l + 1}` is `(-1)^k sum_c e_c mu_{i + c + sum t}` where
    /// `e_c` are the coefficients of `prod (u - x_l)`.
    pub fn modified_moment_series(&self, i: usize, xs: &[K], k: usize, truncation: u32) -> Result<InverseSeries<K>> {
        if k > MAX_VARS {
            return Err(Error::Invalid(format!("at most {MAX_VARS} formal parameters, got {k}")));
        }
        let e = product_poly(xs);
        let budget = (truncation as usize).checked_sub(k + 1);
        if let Some(b) = budget {
            self.require(i + xs.len() + b)?;
        }
        let mut terms = Vec::new();
        if let Some(b) = budget {
            let sign = crate::ring::sign::<K>(k);
            for t in compositions(k, b) {
                let s: usize = t.iter().sum();
                let mut coeff = K::zero();
                for (c, ec) in e.coeffs().iter().enumerate() {
                    coeff = coeff + &(ec.clone() * &self.moment(i + c + s)?);
                }
                let mut mono: Monomial = [0; MAX_VARS];
                for (l, tl) in t.iter().enumerate() {
                    mono[l] = (*tl + 1) as u16;
                }
                terms.push((mono, coeff * &sign));
            }
        }
        Ok(InverseSeries::from_terms(Some(truncation), terms))
    }

    /// `det (modified_moment(i + j))_{0 <= i,j < n}` at rational `y`.
    pub fn modified_hankel_det(&self, n: usize, xs: &[K], ys: &[K]) -> Result<K> {
        let rho = (0..(2 * n).max(1) - 1)
            .map(|s| self.modified_moment(s, xs, ys))
            .collect::<Result<Vec<_>>>()?;
        det_field(&RingMatrix::from_fn(n, n, |i, j| rho[i + j].clone()))
    }

    /// Series version of [`modified_hankel_det`](Self::modified_hankel_det).
    pub fn modified_hankel_det_series(&self, n: usize, xs: &[K], k: usize, truncation: u32) -> Result<InverseSeries<K>> {
        let rho = (0..(2 * n).max(1) - 1)
            .map(|s| self.modified_moment_series(s, xs, k, truncation))
            .collect::<Result<Vec<_>>>()?;
        det_generic(&RingMatrix::from_fn(n, n, |i, j| rho[i + j].clone()))
    }

    /// Parses `{"type":"atoms","atoms":[["node","weight"],...]}`,
    /// `{"type":"sequence","moments":["1","0",...]}` or `{"type":"chebyshev"}`.
    pub fn from_json(text: &str) -> Result<Self> {
        let raw: RawFunctional = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let parse = |s: &str| K::parse_scalar(s).ok_or_else(|| Error::Parse(format!("not a rational: {s:?}")));
        match raw {
            RawFunctional::Atoms { atoms } => {
                let atoms = atoms
                    .iter()
                    .map(|[u, w]| Ok((parse(u)?, parse(w)?)))
                    .collect::<Result<Vec<_>>>()?;
                Self::finite_atom(atoms)
            }
            RawFunctional::Sequence { moments } => {
                Ok(Self::sequence(moments.iter().map(|s| parse(s)).collect::<Result<_>>()?))
            }
            RawFunctional::Chebyshev => Ok(Self::chebyshev()),
        }
    }
}

#[derive(Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
enum RawFunctional {
    Atoms { atoms: Vec<[String; 2]> },
    Sequence { moments: Vec<String> },
    Chebyshev,
}

/// `prod_l (u - x_l)` as a polynomial in `u`.
pub fn product_poly<K: Scalar>(xs: &[K]) -> UniPoly<K> {
    xs.iter().fold(UniPoly::constant(K::one()).with_var("u"), |acc, x| {
        acc * UniPoly::new(vec![-x.clone(), K::one()], "u")
    })
}

/// All `k`-tuples of non-negative integers with sum `<= budget`.
fn compositions(k: usize, budget: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..k {
        let mut next = Vec::new();
        for t in &out {
            let used: usize = t.iter().sum();
            for v in 0..=budget - used {
                let mut t = t.clone();
                t.push(v);
                next.push(t);
            }
        }
        out = next;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{QFunctional, Rational};
    use num_traits::FromPrimitive;

    fn q(n: i64) -> Rational {
        Rational::from_i64(n).unwrap()
    }

    fn r(p: i64, d: i64) -> Rational {
        Rational::new(p.into(), d.into())
    }

    #[test]
    fn catalan_moments() {
        let f = QFunctional::chebyshev();
        assert_eq!(f.moment(8).unwrap(), q(14));
        assert_eq!(f.moment(5).unwrap(), q(0));
        assert_eq!(f.hankel_det(0).unwrap(), q(1));
        assert_eq!(f.hankel_det(4).unwrap(), q(1));
    }

    #[test]
    fn atoms() {
        let f = QFunctional::finite_atom(vec![(q(1), r(1, 2)), (q(-1), r(1, 2))]).unwrap();
        assert_eq!(f.moment(2).unwrap(), q(1));
        assert_eq!(f.hankel_det(3).unwrap(), q(0));
        assert!(QFunctional::finite_atom(vec![(q(1), q(1)), (q(1), q(2))]).is_err());
        assert!(QFunctional::finite_atom(vec![(q(1), q(0))]).is_err());
    }

    #[test]
    fn sequence_horizon() {
        let f = QFunctional::sequence(vec![q(1), q(0), q(1)]);
        assert_eq!(f.moment(2).unwrap(), q(1));
        assert_eq!(f.moment(3), Err(Error::Horizon { needed: 3, available: 2 }));
        assert!(f.hankel_det(2).is_ok());
        assert!(f.hankel_det(3).is_err());
    }

    #[test]
    fn apply_is_linear_extension() {
        let f = QFunctional::chebyshev();
        let p = UniPoly::new(vec![q(-1), q(0), q(1)], "x");
        assert_eq!(f.apply(&(p.clone() * &p)).unwrap(), q(1));
        let x = UniPoly::var("x");
        assert_eq!(f.apply(&(p * &x)).unwrap(), q(0));
        assert_eq!(f.apply(&UniPoly::constant(q(1))).unwrap(), q(1));
    }

    #[test]
    fn single_atom_modified() {
        let f = QFunctional::finite_atom(vec![(q(0), q(1))]).unwrap();
        assert_eq!(f.modified_moment(0, &[q(3)], &[q(2)]).unwrap(), r(3, 2));
        assert_eq!(f.modified_moment(0, &[], &[q(0)]), Err(Error::Pole("0".into())));
    }

    #[test]
    fn catalan_series_single_pole() {
        let f = QFunctional::chebyshev();
        let s = f.modified_moment_series(0, &[], 1, 6).unwrap();
        let expected = crate::QSeries::from_terms(
            Some(6),
            [([1, 0, 0, 0], q(-1)), ([3, 0, 0, 0], q(-1)), ([5, 0, 0, 0], q(-2))],
        );
        assert_eq!(s, expected);
    }

    #[test]
    fn series_horizon_demand() {
        // i + m + T - 1 - k: 0 + 1 + 5 - 1 - 1 = 4
        let f = QFunctional::sequence(vec![q(1), q(2), q(3), q(4), q(5)]);
        assert!(f.modified_moment_series(0, &[q(1)], 1, 5).is_ok());
        assert!(f.modified_moment_series(0, &[q(1)], 1, 6).is_err());
        assert!(f.modified_moment_series(0, &[q(1)], 2, 2).unwrap().terms().is_empty());
    }

    #[test]
    fn json_ingestion() {
        let f = QFunctional::from_json(r#"{"type":"atoms","atoms":[["1/2","1"],["-3","2/3"]]}"#).unwrap();
        assert_eq!(f.atoms().unwrap()[0], (r(1, 2), q(1)));
        let f = QFunctional::from_json(r#"{"type":"sequence","moments":["1","0","1/2"]}"#).unwrap();
        assert_eq!(f.horizon(), Some(2));
        let f = QFunctional::from_json(r#"{"type":"chebyshev"}"#).unwrap();
        assert_eq!(f.hankel_det(3).unwrap(), q(1));
        assert!(matches!(QFunctional::from_json(r#"{"type":"atoms"}"#), Err(Error::Parse(_))));
        assert!(matches!(QFunctional::from_json(r#"{"type":"sequence","moments":["x"]}"#), Err(Error::Parse(_))));
        assert!(QFunctional::from_json("[").is_err());
        assert!(QFunctional::from_json(r#"{"type":"sequence","moments":[]}"#).unwrap().moment(0).is_err());
    }
}
