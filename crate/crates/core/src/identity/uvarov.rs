//! Orthogonal polynomials for a rationally modified functional
//! `L'(f) = L(f(u) prod_{l>=2} (u - x_l) / prod_l (u - y_l))`, obtained as
//! the right-hand side of the identity read as a polynomial in `x_1`.

use std::sync::Arc;

use num_traits::Zero;

use super::{assemble, check_depth, fmt_list, theorem_sign, y_vandermonde};
use crate::moments::MomentFunctional;
use crate::orthopoly::{linear_hankel_poly, OrthoSystem};
use crate::ring::{det_generic, vandermonde_product, Ring, Scalar, UniPoly};
use crate::{Error, Result};

/// Right-hand side with `x_1` formal and `xs_fixed = (x_2, ..., x_m)`,
/// as a polynomial in `x`.
pub fn uvarov_polynomial<K: Scalar>(sys: &OrthoSystem<K>, n: usize, xs_fixed: &[K], ys: &[K]) -> Result<UniPoly<K>> {
    let (k, m) = (ys.len(), xs_fixed.len() + 1);
    check_depth(sys, n, m)?;
    let vy = y_vandermonde(ys);
    if vy.is_zero() {
        return Err(Error::Coincident(format!("ys = {}", fmt_list(ys))));
    }
    let x = UniPoly::<K>::var("x");
    let mut xvals = vec![x];
    xvals.extend(xs_fixed.iter().map(|v| UniPoly::constant(v.clone())));
    let vx = vandermonde_product(&xvals);
    if vx.is_zero() {
        return Err(Error::Coincident(format!("xs = {}", fmt_list(xs_fixed))));
    }

    let mat = assemble(
        n,
        k,
        m,
        |i, b| {
            if b < 0 {
                return Ok(UniPoly::zero());
            }
            let p = sys.p(b as usize)?;
            Ok(if i == 0 { p.clone() } else { UniPoly::constant(p.eval(&xs_fixed[i - 1])) })
        },
        |l, b| {
            Ok(UniPoly::constant(if b < 0 {
                Ring::pow(&ys[l], (-b - 1) as u32)
            } else {
                sys.q_exact(b as usize, &ys[l])?
            }))
        },
    )?;
    let det = det_generic(&mat)?.scale(&(theorem_sign::<K>(n, k, m) / &vy));
    let (quot, rem) = det.div_rem(&vx).expect("nonzero divisor");
    if !rem.is_zero() {
        return Err(Error::Invalid(format!("determinant not divisible by the x-Vandermonde: remainder {rem}")));
    }
    Ok(quot.with_var("x"))
}

#[derive(Clone, Debug)]
pub struct UvarovPolynomial<K> {
    pub n: usize,
    pub poly: UniPoly<K>,
    /// Whether the polynomial has full degree `n`; orthogonality is only
    /// guaranteed then.
    pub degree_ok: bool,
    /// Whether the modified Hankel determinant in `x` matches the polynomial
    /// (times `H(n-k)` when `n >= k`).
    pub hankel_agrees: bool,
}

#[derive(Clone, Debug)]
pub struct UvarovReport<K> {
    pub polys: Vec<UvarovPolynomial<K>>,
    /// `L'(P_i P_j)`.
    pub gram: Vec<Vec<K>>,
}

impl<K: Scalar> UvarovReport<K> {
    /// Every off-diagonal Gram entry vanishes.
    pub fn orthogonal(&self) -> bool {
        self.gram
            .iter()
            .enumerate()
            .all(|(i, row)| row.iter().enumerate().all(|(j, v)| i == j || v.is_zero()))
    }

    pub fn passed(&self) -> bool {
        self.orthogonal() && self.polys.iter().all(|p| p.hankel_agrees)
    }
}

/// `P_0, ..., P_max_n` with their degree flags and Gram matrix under the
/// modified functional.
pub fn uvarov_system<K: Scalar>(sys: &OrthoSystem<K>, max_n: usize, xs_fixed: &[K], ys: &[K]) -> Result<UvarovReport<K>> {
    let f = sys.functional();
    let nu = (0..=2 * max_n + 1)
        .map(|s| f.modified_moment(s, xs_fixed, ys))
        .collect::<Result<Vec<_>>>()?;
    let modified = Arc::new(MomentFunctional::sequence(nu));
    let k = ys.len();
    let mut polys = Vec::with_capacity(max_n + 1);
    for n in 0..=max_n {
        let poly = uvarov_polynomial(sys, n, xs_fixed, ys)?;
        let mut expected = poly.clone();
        if let Some(d) = n.checked_sub(k) {
            expected = expected.scale(&f.hankel_det(d)?);
        }
        let hankel_agrees = linear_hankel_poly(&modified, n)? == expected;
        polys.push(UvarovPolynomial { n, degree_ok: poly.degree() == Some(n), poly, hankel_agrees });
    }
    let gram = polys
        .iter()
        .map(|a| {
            polys
                .iter()
                .map(|b| modified.apply(&(a.poly.clone() * &b.poly)))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(UvarovReport { polys, gram })
}
