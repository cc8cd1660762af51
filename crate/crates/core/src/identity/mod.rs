//! Both sides of the moment determinant identity
//!
//! ```text
//! det_{0<=i,j<n} L(u^{i+j} prod_{l<=m} (u - x_l) / prod_{l<=k} (u - y_l))
//!   / H(n-k)
//! = (-1)^{n(m-k)+km} det M / (prod_{i<j} (x_j - x_i) prod_{i<j} (y_i - y_j))
//! ```
//!
//! where `M` has `m` rows `p_b(x_i)` and `k` rows `q_b(y_l)` over the columns
//! `b = n-k, ..., n+m-1`. When `n < k` there is no denominator on the left,
//! and the columns with negative `b` hold `0` in the `x` rows and
//! `y_l^{-b-1}` in the `y` rows. The same column rule covers both shapes, so
//! a single assembler builds `M` and its `n < k` sibling `N`.
//!
//! The `y_l` are either rational numbers (finite-atom functionals, exact
//! comparison) or formal, in which case both sides are series in `1/y_l`.

mod condensation;
mod confluent;
mod uvarov;

pub use condensation::{condensation_check, jacobi_check, shifted_hankel_difference_check, shifted_hankel_product_check};
pub use confluent::{confluent_matrix, confluent_rhs, verify_confluent, ConfluentInstance};
pub use uvarov::{uvarov_polynomial, uvarov_system, UvarovPolynomial, UvarovReport};

use std::fmt::Display;
use std::time::Instant;

use num_traits::One;

use crate::orthopoly::OrthoSystem;
use crate::report::VerificationReport;
use crate::ring::{binomial, det_field, det_generic, sign, vandermonde_product, InverseSeries, Ring, RingMatrix, Scalar, MAX_VARS};
use crate::{Error, Result};

/// The `y` parameters of an instance.
#[derive(Clone, Debug, PartialEq)]
pub enum YParams<K> {
    /// Rational values; needs a finite-atom functional.
    Exact(Vec<K>),
    /// `k` formal parameters; sides are compared as series in `1/y_l` below
    /// total degree `truncation`.
    Formal { k: usize, truncation: u32 },
}

#[derive(Clone, Debug, PartialEq)]
pub struct IdentityInstance<K> {
    pub n: usize,
    pub xs: Vec<K>,
    pub ys: YParams<K>,
}

impl<K: Scalar> IdentityInstance<K> {
    pub fn exact(n: usize, xs: Vec<K>, ys: Vec<K>) -> Self {
        IdentityInstance { n, xs, ys: YParams::Exact(ys) }
    }

    pub fn formal(n: usize, xs: Vec<K>, k: usize, truncation: u32) -> Self {
        IdentityInstance { n, xs, ys: YParams::Formal { k, truncation } }
    }

    pub fn k(&self) -> usize {
        match &self.ys {
            YParams::Exact(ys) => ys.len(),
            YParams::Formal { k, .. } => *k,
        }
    }

    pub fn m(&self) -> usize {
        self.xs.len()
    }

    fn report(&self, identity: &str) -> VerificationReport {
        let r = VerificationReport::new(identity)
            .param("n", self.n)
            .param("k", self.k())
            .param("m", self.m())
            .param("xs", fmt_list(&self.xs));
        match &self.ys {
            YParams::Exact(ys) => r.param("ys", fmt_list(ys)),
            YParams::Formal { truncation, .. } => r.param("ys", "formal").param("truncation", truncation),
        }
    }
}

pub(crate) fn fmt_list<T: Display>(v: &[T]) -> String {
    let items: Vec<String> = v.iter().map(ToString::to_string).collect();
    format!("[{}]", items.join(", "))
}

/// `(-1)^{n(m-k)+km}`.
pub fn theorem_sign<R: Ring>(n: usize, k: usize, m: usize) -> R {
    sign(n * m.abs_diff(k) + k * m)
}

/// Lays out the `(m+k) x (m+k)` matrix: `m` rows from `x_entry(i, b)`, then
/// `k` rows from `y_entry(l, b)`, with `b = n - k + column`.
pub(crate) fn assemble<S: Ring>(
    n: usize,
    k: usize,
    m: usize,
    mut x_entry: impl FnMut(usize, isize) -> Result<S>,
    mut y_entry: impl FnMut(usize, isize) -> Result<S>,
) -> Result<RingMatrix<S>> {
    let size = m + k;
    let mut rows = Vec::with_capacity(size);
    for i in 0..size {
        let row = (0..size)
            .map(|c| {
                let b = n as isize - k as isize + c as isize;
                if i < m {
                    x_entry(i, b)
                } else {
                    y_entry(i - m, b)
                }
            })
            .collect::<Result<Vec<_>>>()?;
        rows.push(row);
    }
    if size == 0 {
        return RingMatrix::new(0, 0, vec![]);
    }
    RingMatrix::from_rows(rows)
}

fn check_depth<K: Scalar>(sys: &OrthoSystem<K>, n: usize, m: usize) -> Result<()> {
    let need = (n + m).saturating_sub(1);
    if sys.depth() < need {
        return Err(Error::Invalid(format!(
            "orthogonal system reaches p_{}, the instance needs p_{need}",
            sys.depth()
        )));
    }
    Ok(())
}

/// The theorem matrix at rational parameters, for any `n` (the `M` shape when
/// `n >= k`, the `N` shape otherwise).
pub fn theorem_matrix_exact<K: Scalar>(sys: &OrthoSystem<K>, n: usize, xs: &[K], ys: &[K]) -> Result<RingMatrix<K>> {
    let (k, m) = (ys.len(), xs.len());
    check_depth(sys, n, m)?;
    assemble(
        n,
        k,
        m,
        |i, b| Ok(if b < 0 { K::zero() } else { sys.p(b as usize)?.eval(&xs[i]) }),
        |l, b| {
            if b < 0 {
                Ok(Ring::pow(&ys[l], (-b - 1) as u32))
            } else {
                sys.q_exact(b as usize, &ys[l])
            }
        },
    )
}

/// `M_{k,m,n}`; requires `n >= k`.
pub fn matrix_m<K: Scalar>(sys: &OrthoSystem<K>, n: usize, xs: &[K], ys: &[K]) -> Result<RingMatrix<K>> {
    if n < ys.len() {
        return Err(Error::Invalid(format!("the M shape needs n >= k, got n = {n}, k = {}", ys.len())));
    }
    theorem_matrix_exact(sys, n, xs, ys)
}

/// `N_{k,m,n}`; requires `n <= k` (at `n = k` it coincides with `M`).
pub fn matrix_n<K: Scalar>(sys: &OrthoSystem<K>, n: usize, xs: &[K], ys: &[K]) -> Result<RingMatrix<K>> {
    if n > ys.len() {
        return Err(Error::Invalid(format!("the N shape needs n <= k, got n = {n}, k = {}", ys.len())));
    }
    theorem_matrix_exact(sys, n, xs, ys)
}

/// Modified Hankel determinant, divided by `H(n-k)` when `n >= k`.
pub fn lhs_exact<K: Scalar>(sys: &OrthoSystem<K>, n: usize, xs: &[K], ys: &[K]) -> Result<K> {
    let f = sys.functional();
    let det = f.modified_hankel_det(n, xs, ys)?;
    match n.checked_sub(ys.len()) {
        Some(d) => {
            let h = f.hankel_det(d)?;
            if h.is_zero() {
                return Err(Error::Degenerate(d));
            }
            Ok(det / &h)
        }
        None => Ok(det),
    }
}

/// `prod_{i<j} (y_i - y_j)`, the reversed orientation used for the `y`s.
pub fn y_vandermonde<R: Ring>(ys: &[R]) -> R {
    let v = vandermonde_product(ys);
    if (ys.len() * ys.len().saturating_sub(1) / 2).is_multiple_of(2) {
        v
    } else {
        -v
    }
}

pub fn rhs_exact<K: Scalar>(sys: &OrthoSystem<K>, n: usize, xs: &[K], ys: &[K]) -> Result<K> {
    let vx = vandermonde_product(xs);
    let vy = y_vandermonde(ys);
    if vx.is_zero() {
        return Err(Error::Coincident(format!("xs = {}", fmt_list(xs))));
    }
    if vy.is_zero() {
        return Err(Error::Coincident(format!("ys = {}", fmt_list(ys))));
    }
    let det = det_field(&theorem_matrix_exact(sys, n, xs, ys)?)?;
    Ok(theorem_sign::<K>(n, ys.len(), xs.len()) * &det / &(vx * &vy))
}

/// Checks the identity for one instance. Failures to evaluate either side
/// are reported, not returned.
pub fn verify_identity<K: Scalar>(sys: &OrthoSystem<K>, inst: &IdentityInstance<K>) -> VerificationReport {
    let start = Instant::now();
    let mut report = match &inst.ys {
        YParams::Exact(ys) => {
            let report = inst.report("identity");
            let lhs = lhs_exact(sys, inst.n, &inst.xs, ys);
            let rhs = rhs_exact(sys, inst.n, &inst.xs, ys);
            match (lhs, rhs) {
                (Ok(l), Ok(r)) => {
                    let equal = l == r;
                    let mut report = report.sides(&l, &r, equal);
                    if !equal {
                        report.first_difference = Some(format!("{l} != {r}"));
                    }
                    report
                }
                (Err(e), _) | (_, Err(e)) => report.failed(e),
            }
        }
        YParams::Formal { k, truncation } => {
            let report = inst.report("identity-series");
            match series_sides(sys, inst.n, &inst.xs, *k, *truncation) {
                Ok(sides) => {
                    let diff = sides.lhs.first_difference(&sides.rhs);
                    let mut report = report.sides(&sides.lhs, &sides.rhs, diff.is_none());
                    report.compared_order = Some(sides.compared_order);
                    report.first_difference = diff.map(|(mono, l, r)| format!("coefficient of w^{mono:?}: {l} vs {r}"));
                    report
                }
                Err(e) => report.failed(e),
            }
        }
    };
    report.elapsed = start.elapsed();
    report
}

/// Both sides in formal mode, multiplied through by the exact polynomial
/// `prod_{i<j} (w_j - w_i)` in `w_l = 1/y_l` so no division by the
/// `y`-Vandermonde is needed.
#[derive(Clone, Debug)]
pub struct SeriesSides<K> {
    pub lhs: InverseSeries<K>,
    pub rhs: InverseSeries<K>,
    /// The unnormalized sides agree below this total degree whenever the
    /// normalized ones do.
    pub compared_order: u32,
}

/// Evaluates both normalized sides, raising the internal truncation until
/// they are known below `target` in the unnormalized identity.
///
/// With `y_i - y_j = (w_j - w_i) / (w_i w_j)` the `y`-Vandermonde is
/// `prod_{i<j} (w_j - w_i) / prod_l w_l^{k-1}`. Multiplying both sides by
/// the numerator gives `lhs * prod (w_j - w_i)` against
/// `sign * det M * prod w_l^{k-1} / Vx`. For `n < k` the `y` rows are
/// scaled by `w_l^{k-n-1}` so the power columns become `w_l^c`; then the
/// factor is `prod w_l^n`. Since the normalizing polynomial is homogeneous
/// of degree `binom(k, 2)`, agreement below order `T` transfers to the
/// unnormalized sides below `T - binom(k, 2)`.
pub fn series_sides<K: Scalar>(sys: &OrthoSystem<K>, n: usize, xs: &[K], k: usize, target: u32) -> Result<SeriesSides<K>> {
    if k > MAX_VARS {
        return Err(Error::Invalid(format!("at most {MAX_VARS} formal parameters, got {k}")));
    }
    let m = xs.len();
    check_depth(sys, n, m)?;
    let vx = vandermonde_product(xs);
    if vx.is_zero() {
        return Err(Error::Coincident(format!("xs = {}", fmt_list(xs))));
    }
    let lost = pairs(k);
    let f = sys.functional();
    let hden = match n.checked_sub(k) {
        Some(d) => {
            let h = f.hankel_det(d)?;
            if h.is_zero() {
                return Err(Error::Degenerate(d));
            }
            Some(h.inv())
        }
        None => None,
    };
    let pi = (0..k).fold(InverseSeries::<K>::one(), |acc, j| {
        (0..j).fold(acc, |acc, i| {
            acc * (InverseSeries::w_power(j, 1) - &InverseSeries::w_power(i, 1))
        })
    });
    let w_shift = if n >= k { 0 } else { (k - n - 1) as u16 };
    let w_factor = if n >= k { k.saturating_sub(1) } else { n } as u16;
    let sgn = theorem_sign::<K>(n, k, m);
    let scale = sgn / &vx;

    let mut internal = (target + lost).saturating_sub((n.saturating_sub(1) * k) as u32).max(k as u32 + 1);
    for _ in 0..8 {
        let mut lhs = f.modified_hankel_det_series(n, xs, k, internal)?;
        if let Some(h) = &hden {
            lhs = crate::ring::Algebra::scale(&lhs, h);
        }
        let lhs = lhs * &pi;

        let mut q_cache: Vec<Vec<Option<InverseSeries<K>>>> = vec![vec![None; n + m]; k];
        let mat = assemble(
            n,
            k,
            m,
            |i, b| {
                Ok(InverseSeries::constant(if b < 0 { K::zero() } else { sys.p(b as usize)?.eval(&xs[i]) }))
            },
            |l, b| {
                if b < 0 {
                    let c = (b + (k - n) as isize) as u16;
                    return Ok(InverseSeries::w_power(l, c));
                }
                let slot = &mut q_cache[l][b as usize];
                if slot.is_none() {
                    *slot = Some(sys.q_series(b as usize, l, internal)?.shift_var(l, w_shift));
                }
                Ok(slot.clone().expect("filled"))
            },
        )?;
        let det = det_generic(&mat)?;
        let powers = (0..k).fold(InverseSeries::<K>::one(), |acc, l| acc * InverseSeries::w_power(l, w_factor));
        let rhs = crate::ring::Algebra::scale(&(det * &powers), &scale);

        let order = lhs.common_order(&rhs).unwrap_or(u32::MAX);
        let compared = order.saturating_sub(lost);
        if compared >= target {
            return Ok(SeriesSides { lhs, rhs, compared_order: compared });
        }
        internal += target - compared;
    }
    Err(Error::Invalid(format!("could not reach truncation order {target}")))
}

/// `binom(k, 2)` as used for the normalization loss.
pub fn pairs(k: usize) -> u32 {
    u32::try_from(binomial(k as u32, 2)).expect("small k")
}
