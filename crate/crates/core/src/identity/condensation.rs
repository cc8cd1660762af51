//! Determinant identities behind the condensation argument: Jacobi's
//! identity for complementary minors, two bilinear relations between Hankel
//! determinants of shifted sequences (checked over `Q[alpha, beta]`), and the
//! five-term relation between theorem matrices that Jacobi's identity yields.

use std::time::Instant;

use super::{fmt_list, theorem_matrix_exact};
use crate::orthopoly::OrthoSystem;
use crate::report::VerificationReport;
use crate::ring::{det_field, det_generic, RingMatrix, Scalar, UniPoly};
use crate::{Error, Result};

type BiPoly<K> = UniPoly<UniPoly<K>>;

fn hankel<K: Scalar>(dim: usize, entry: impl Fn(usize) -> BiPoly<K>) -> Result<BiPoly<K>> {
    det_generic(&RingMatrix::from_fn(dim, dim, |i, j| entry(i + j)))
}

struct Shifts<K> {
    alpha: BiPoly<K>,
    beta: BiPoly<K>,
    c: Vec<BiPoly<K>>,
}

impl<K: Scalar> Shifts<K> {
    fn new(c: &[K]) -> Self {
        Shifts {
            alpha: UniPoly::var("alpha"),
            beta: UniPoly::constant(UniPoly::var("beta")).with_var("alpha"),
            c: c.iter().map(|v| UniPoly::constant(UniPoly::constant(v.clone()))).collect(),
        }
    }

    fn plain(&self, s: usize) -> BiPoly<K> {
        self.c[s].clone()
    }

    /// `t c_s + c_{s+1}`.
    fn single(&self, t: &BiPoly<K>, s: usize) -> BiPoly<K> {
        t.clone() * &self.c[s] + &self.c[s + 1]
    }

    /// `alpha beta c_s + (alpha + beta) c_{s+1} + c_{s+2}`.
    fn double(&self, s: usize) -> BiPoly<K> {
        self.alpha.clone() * &self.beta * &self.c[s]
            + &((self.alpha.clone() + &self.beta) * &self.c[s + 1])
            + &self.c[s + 2]
    }
}

fn require_len<K>(c: &[K], needed: usize) -> Result<()> {
    if c.len() < needed {
        return Err(Error::Horizon { needed: needed - 1, available: c.len().saturating_sub(1) });
    }
    Ok(())
}

fn bivariate_report<K: Scalar>(
    identity: &str,
    c: &[K],
    n: usize,
    start: Instant,
    sides: Result<(BiPoly<K>, BiPoly<K>)>,
) -> VerificationReport {
    let report = VerificationReport::new(identity).param("n", n).param("c", fmt_list(c));
    let mut report = match sides {
        Ok((l, r)) => {
            let eq = l == r;
            report.sides(&l, &r, eq)
        }
        Err(e) => report.failed(e),
    };
    report.elapsed = start.elapsed();
    report
}

/// For `n >= 1`, writing `D_d(f)` for `det_{0<=i,j<d} f(i+j)`:
///
/// ```text
/// (beta - alpha) D_{n-1}(alpha beta c + (alpha+beta) c' + c'') D_n(c)
///   = D_{n-1}(alpha c + c') D_n(beta c + c') - D_{n-1}(beta c + c') D_n(alpha c + c')
/// ```
///
/// with `c'`, `c''` the sequence shifted by one and two. Needs `c_0..c_{2n-1}`.
pub fn shifted_hankel_difference_check<K: Scalar>(c: &[K], n: usize) -> VerificationReport {
    let start = Instant::now();
    let sides = (|| {
        if n == 0 {
            return Err(Error::Invalid("n must be positive".into()));
        }
        require_len(c, 2 * n)?;
        let sh = Shifts::new(c);
        let (a, b) = (&sh.alpha, &sh.beta);
        let lhs = (b.clone() - a) * hankel(n - 1, |s| sh.double(s))? * hankel(n, |s| sh.plain(s))?;
        let rhs = hankel(n - 1, |s| sh.single(a, s))? * hankel(n, |s| sh.single(b, s))?
            - hankel(n - 1, |s| sh.single(b, s))? * hankel(n, |s| sh.single(a, s))?;
        Ok((lhs, rhs))
    })();
    bivariate_report("shifted-hankel-difference", c, n, start, sides)
}

/// For `n >= 1`:
///
/// ```text
/// D_n(alpha c + c') D_n(beta c + c')
///   = -D_{n+1}(c) D_{n-1}(alpha beta c + (alpha+beta) c' + c'')
///     + D_n(c) D_n(alpha beta c + (alpha+beta) c' + c'')
/// ```
///
/// Needs `c_0..c_{2n}`.
pub fn shifted_hankel_product_check<K: Scalar>(c: &[K], n: usize) -> VerificationReport {
    let start = Instant::now();
    let sides = (|| {
        if n == 0 {
            return Err(Error::Invalid("n must be positive".into()));
        }
        require_len(c, 2 * n + 1)?;
        let sh = Shifts::new(c);
        let (a, b) = (&sh.alpha, &sh.beta);
        let lhs = hankel(n, |s| sh.single(a, s))? * hankel(n, |s| sh.single(b, s))?;
        let rhs = hankel(n, |s| sh.plain(s))? * hankel(n, |s| sh.double(s))?
            - hankel(n + 1, |s| sh.plain(s))? * hankel(n - 1, |s| sh.double(s))?;
        Ok((lhs, rhs))
    })();
    bivariate_report("shifted-hankel-product", c, n, start, sides)
}

/// `det A det A^{j1,j2}_{i1,i2} = det A^{j1}_{i1} det A^{j2}_{i2} - det A^{j2}_{i1} det A^{j1}_{i2}`,
/// where `A^{j}_{i}` drops row `i` and column `j` (1-based).
pub fn jacobi_check<K: Scalar>(a: &RingMatrix<K>, i1: usize, i2: usize, j1: usize, j2: usize) -> VerificationReport {
    let start = Instant::now();
    let report = VerificationReport::new("jacobi")
        .param("size", a.rows())
        .param("rows", format!("{i1},{i2}"))
        .param("cols", format!("{j1},{j2}"));
    let sides = (|| {
        let n = a.rows();
        if !a.is_square() || !(1 <= i1 && i1 < i2 && i2 <= n && 1 <= j1 && j1 < j2 && j2 <= n) {
            return Err(Error::Invalid(format!(
                "need 1 <= i1 < i2 <= N and 1 <= j1 < j2 <= N for a square N x N matrix, got ({i1},{i2}), ({j1},{j2})"
            )));
        }
        let drop = |rows: &[usize], cols: &[usize]| -> Result<K> {
            let keep_r: Vec<usize> = (0..n).filter(|r| !rows.contains(&(r + 1))).collect();
            let keep_c: Vec<usize> = (0..n).filter(|c| !cols.contains(&(c + 1))).collect();
            det_field(&a.submatrix(&keep_r, &keep_c))
        };
        let lhs = drop(&[], &[])? * &drop(&[i1, i2], &[j1, j2])?;
        let rhs = drop(&[i1], &[j1])? * &drop(&[i2], &[j2])? - drop(&[i1], &[j2])? * &drop(&[i2], &[j1])?;
        Ok((lhs, rhs))
    })();
    let mut report = match sides {
        Ok((l, r)) => {
            let eq = l == r;
            report.sides(l, r, eq)
        }
        Err(e) => report.failed(e),
    };
    report.elapsed = start.elapsed();
    report
}

/// With `D(k, m, n; xs, ys)` the determinant of the theorem matrix, checks
///
/// ```text
/// D(k, m, n; x1.., y1..yk) D(k-1, m-1, n; x2.., y1..y_{k-1})
///   = D(k, m-1, n+1; x2.., y1..yk) D(k-1, m, n-1; x1.., y1..y_{k-1})
///   - D(k, m-1, n; x2.., y1..yk) D(k-1, m, n; x1.., y1..y_{k-1})
/// ```
///
/// which is Jacobi's identity on the first `x` row, the last `y` row and
/// the first and last columns. Needs `n, k, m >= 1`.
pub fn condensation_check<K: Scalar>(sys: &OrthoSystem<K>, n: usize, xs: &[K], ys: &[K]) -> VerificationReport {
    let start = Instant::now();
    let report = VerificationReport::new("condensation")
        .param("n", n)
        .param("k", ys.len())
        .param("m", xs.len())
        .param("xs", fmt_list(xs))
        .param("ys", fmt_list(ys));
    let sides = (|| {
        if n == 0 || xs.is_empty() || ys.is_empty() {
            return Err(Error::Invalid("need n, k, m >= 1".into()));
        }
        let d = |n: usize, xs: &[K], ys: &[K]| det_field(&theorem_matrix_exact(sys, n, xs, ys)?);
        let (x_tail, y_head) = (&xs[1..], &ys[..ys.len() - 1]);
        let lhs = d(n, xs, ys)? * &d(n, x_tail, y_head)?;
        let rhs = d(n + 1, x_tail, ys)? * &d(n - 1, xs, y_head)? - d(n, x_tail, ys)? * &d(n, xs, y_head)?;
        Ok((lhs, rhs))
    })();
    let mut report = match sides {
        Ok((l, r)) => {
            let eq = l == r;
            report.sides(l, r, eq)
        }
        Err(e) => report.failed(e),
    };
    report.elapsed = start.elapsed();
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{QFunctional, QSystem, Rational};
    use num_traits::FromPrimitive;
    use std::sync::Arc;

    fn q(n: i64) -> Rational {
        Rational::from_i64(n).unwrap()
    }

    #[test]
    fn bivariate_small_cases() {
        let c = [q(2), q(-1), q(3), q(5), q(-4), q(7), q(1)];
        for n in 1..=3 {
            let r = shifted_hankel_difference_check(&c, n);
            assert!(r.passed(), "{r}");
            let r = shifted_hankel_product_check(&c, n);
            assert!(r.passed(), "{r}");
        }
        assert!(shifted_hankel_product_check(&c, 4).error.is_some());
        assert!(shifted_hankel_difference_check(&c, 0).error.is_some());
    }

    #[test]
    fn product_identity_first_case() {
        // (alpha c0 + c1)(beta c0 + c1)
        let r = shifted_hankel_product_check(&[q(1), q(2), q(3)], 1);
        assert!(r.passed());
        assert_eq!(r.lhs, "(beta + 2)*alpha + (2*beta + 4)");
    }

    #[test]
    fn jacobi_two_by_two() {
        let a = RingMatrix::from_rows(vec![vec![q(3), q(1)], vec![q(4), q(2)]]).unwrap();
        let r = jacobi_check(&a, 1, 2, 1, 2);
        assert!(r.passed());
        assert_eq!(r.lhs, "2");
        let r = jacobi_check(&a, 2, 1, 1, 2);
        assert!(r.error.is_some());
    }

    #[test]
    fn condensation_on_atoms() {
        let f = QFunctional::finite_atom(vec![(q(-2), q(1)), (q(0), q(2)), (q(1), q(-1)), (q(3), q(1)), (q(5), q(1))]).unwrap();
        let sys = QSystem::build(Arc::new(f), 5).unwrap();
        let xs = [q(4), Rational::new(1.into(), 2.into())];
        let ys = [q(7), q(-5)];
        for n in 1..=3 {
            let r = condensation_check(&sys, n, &xs, &ys);
            assert!(r.passed(), "{r}");
        }
    }
}
