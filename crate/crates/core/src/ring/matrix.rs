use std::fmt;

use super::{Field, Ring};
use crate::Error;

/// Dense row-major matrix over a ring.
#[derive(Clone, Debug, PartialEq)]
pub struct RingMatrix<R> {
    rows: usize,
    cols: usize,
    entries: Vec<R>,
}

impl<R: Ring> RingMatrix<R> {
    pub fn new(rows: usize, cols: usize, entries: Vec<R>) -> Result<Self, Error> {
        if entries.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                entries.len()
            )));
        }
        Ok(RingMatrix { rows, cols, entries })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> R) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        RingMatrix { rows, cols, entries }
    }

    pub fn from_rows(rows: Vec<Vec<R>>) -> Result<Self, Error> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        Self::new(r, c, rows.into_iter().flatten().collect())
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { R::one() } else { R::zero() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &R {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: R) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[R] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    /// Keeps the listed rows and columns, in the given order.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self::from_fn(rows.len(), cols.len(), |i, j| self.get(rows[i], cols[j]).clone())
    }

    /// Deletes one row and one column.
    pub fn minor(&self, row: usize, col: usize) -> Self {
        let rows: Vec<usize> = (0..self.rows).filter(|&i| i != row).collect();
        let cols: Vec<usize> = (0..self.cols).filter(|&j| j != col).collect();
        self.submatrix(&rows, &cols)
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> RingMatrix<S> {
        RingMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn mul(&self, other: &Self) -> Result<Self, Error> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(Self::from_fn(self.rows, other.cols, |i, j| {
            (0..self.cols).fold(R::zero(), |acc, l| acc + &(self.get(i, l).clone() * other.get(l, j)))
        }))
    }

    fn require_square(&self) -> Result<(), Error> {
        if self.is_square() {
            Ok(())
        } else {
            Err(Error::Dimension(format!(
                "determinant of non-square {}x{} matrix",
                self.rows, self.cols
            )))
        }
    }
}

impl<R: Ring + fmt::Display> fmt::Display for RingMatrix<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let cells: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

/// Division-free determinant over any commutative ring: cofactor expansion
/// up to 4x4 (cheaper there, and it skips zero entries), Berkowitz above.
pub fn det_generic<R: Ring>(m: &RingMatrix<R>) -> Result<R, Error> {
    m.require_square()?;
    if m.rows <= 4 {
        return det_cofactor(m);
    }
    det_berkowitz(m)
}

/// Berkowitz's division-free algorithm at every size.
pub fn det_berkowitz<R: Ring>(m: &RingMatrix<R>) -> Result<R, Error> {
    m.require_square()?;
    let n = m.rows;
    if n == 0 {
        return Ok(R::one());
    }
    let charpoly = berkowitz_charpoly(m);
    // constant term of det(t I - A) is (-1)^n det A
    let c = charpoly[n].clone();
    Ok(if n.is_multiple_of(2) { c } else { -c })
}

/// Coefficients of `det(t I - A)`, leading first.
fn berkowitz_charpoly<R: Ring>(m: &RingMatrix<R>) -> Vec<R> {
    let n = m.rows;
    let mut toeplitz: Vec<Vec<R>> = Vec::new();
    let mut a = m.clone();
    while a.rows >= 2 {
        let size = a.rows;
        let corner = a.get(0, 0).clone();
        let top: Vec<R> = a.row(0)[1..].to_vec();
        let left: Vec<R> = (1..size).map(|i| a.get(i, 0).clone()).collect();
        let rest = a.submatrix(&(1..size).collect::<Vec<_>>(), &(1..size).collect::<Vec<_>>());

        // items = [1, -a, -R C, -R A C, ..., -R A^{size-2} C]
        let mut items = vec![R::one(), -corner];
        let mut v = left;
        for step in 0..size - 1 {
            if step > 0 {
                v = (0..size - 1)
                    .map(|i| {
                        rest.row(i)
                            .iter()
                            .zip(&v)
                            .fold(R::zero(), |acc, (x, y)| acc + &(x.clone() * y))
                    })
                    .collect();
            }
            let dot = top.iter().zip(&v).fold(R::zero(), |acc, (x, y)| acc + &(x.clone() * y));
            items.push(-dot);
        }
        toeplitz.push(items);
        a = rest;
    }

    let mut poly = if n == 0 {
        vec![R::one()]
    } else {
        vec![R::one(), -a.get(0, 0).clone()]
    };
    for items in toeplitz.iter().rev() {
        // (len+1) x len lower-triangular Toeplitz matrix with first column `items`
        let len = poly.len();
        poly = (0..=len)
            .map(|i| {
                (0..len.min(i + 1)).fold(R::zero(), |acc, j| acc + &(items[i - j].clone() * &poly[j]))
            })
            .collect();
    }
    poly
}

/// Laplace expansion along the first row. Exponential; for small matrices
/// and as a cross-check.
pub fn det_cofactor<R: Ring>(m: &RingMatrix<R>) -> Result<R, Error> {
    m.require_square()?;
    Ok(cofactor_rec(m))
}

fn cofactor_rec<R: Ring>(m: &RingMatrix<R>) -> R {
    match m.rows {
        0 => R::one(),
        1 => m.get(0, 0).clone(),
        2 => m.get(0, 0).clone() * m.get(1, 1) - m.get(0, 1).clone() * m.get(1, 0),
        n => (0..n).fold(R::zero(), |acc, j| {
            if m.get(0, j).is_zero() {
                return acc;
            }
            let term = m.get(0, j).clone() * &cofactor_rec(&m.minor(0, j));
            if j % 2 == 0 {
                acc + &term
            } else {
                acc - &term
            }
        }),
    }
}

/// Fraction-free Gaussian elimination (Bareiss) with row pivoting.
pub fn det_field<K: Field>(m: &RingMatrix<K>) -> Result<K, Error> {
    m.require_square()?;
    let n = m.rows;
    let mut a: Vec<Vec<K>> = (0..n).map(|i| m.row(i).to_vec()).collect();
    let mut negate = false;
    let mut prev = K::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
            return Ok(K::zero());
        };
        if p != k {
            a.swap(p, k);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (a[i][j].clone() * &a[k][k] - a[i][k].clone() * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = a[k][k].clone();
    }
    let det = if n == 0 { K::one() } else { a[n - 1][n - 1].clone() };
    Ok(if negate { -det } else { det })
}

/// `prod_{i<j} (v_j - v_i)`.
pub fn vandermonde_product<R: Ring>(values: &[R]) -> R {
    let mut acc = R::one();
    for j in 0..values.len() {
        for i in 0..j {
            acc = acc * &(values[j].clone() - &values[i]);
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{QMatrix, Rational};
    use num_traits::FromPrimitive;

    fn q(n: i64) -> Rational {
        Rational::from_i64(n).unwrap()
    }

    fn mat(rows: &[&[i64]]) -> QMatrix {
        RingMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| q(v)).collect()).collect())
            .unwrap()
    }

    #[test]
    fn small_dets() {
        let m = mat(&[&[2, 1, 3], &[0, -1, 4], &[5, 2, 1]]);
        // 2(-1-8) - 1(0-20) + 3(0+5)
        assert_eq!(det_generic(&m).unwrap(), q(17));
        assert_eq!(det_field(&m).unwrap(), q(17));
        assert_eq!(det_cofactor(&m).unwrap(), q(17));
        let empty = QMatrix::new(0, 0, vec![]).unwrap();
        assert_eq!(det_generic(&empty).unwrap(), q(1));
        assert_eq!(det_field(&empty).unwrap(), q(1));
    }

    #[test]
    fn pivoting_needed() {
        let m = mat(&[&[0, 1, 0, 0], &[1, 0, 0, 0], &[0, 0, 0, 1], &[0, 0, 1, 0]]);
        assert_eq!(det_field(&m).unwrap(), q(1));
        assert_eq!(det_generic(&m).unwrap(), q(1));
    }

    #[test]
    fn non_square_rejected() {
        let m = QMatrix::new(2, 3, vec![q(0); 6]).unwrap();
        assert!(det_generic(&m).is_err());
        assert!(QMatrix::new(2, 2, vec![q(0); 3]).is_err());
    }

    #[test]
    fn vandermonde() {
        let v = [q(1), q(2), q(4)];
        assert_eq!(vandermonde_product(&v), q(3 * 2));
        let m = QMatrix::from_fn(3, 3, |i, j| Ring::pow(&v[i], j as u32));
        assert_eq!(det_generic(&m).unwrap(), vandermonde_product(&v));
    }
}
