use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{Algebra, Field, Ring};

/// Dense univariate polynomial; `coeffs[i]` multiplies `var^i`.
///
/// The coefficient list never ends in a zero, so the zero polynomial has an
/// empty list and [`degree`](UniPoly::degree) `None`. The variable tag only
/// affects display; equality compares coefficients.
#[derive(Clone, Debug)]
pub struct UniPoly<R> {
    coeffs: Vec<R>,
    var: &'static str,
}

impl<R: Ring> UniPoly<R> {
    pub fn new(coeffs: Vec<R>, var: &'static str) -> Self {
        let mut p = UniPoly { coeffs, var };
        p.trim();
        p
    }

    /// The polynomial `var` itself.
    pub fn var(var: &'static str) -> Self {
        UniPoly::new(vec![R::zero(), R::one()], var)
    }

    pub fn constant(c: R) -> Self {
        UniPoly::new(vec![c], "x")
    }

    pub fn monomial(c: R, degree: usize, var: &'static str) -> Self {
        let mut coeffs = vec![R::zero(); degree + 1];
        coeffs[degree] = c;
        UniPoly::new(coeffs, var)
    }

    pub fn with_var(mut self, var: &'static str) -> Self {
        self.var = var;
        self
    }

    pub fn var_name(&self) -> &'static str {
        self.var
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<R> {
        self.coeffs
    }

    /// Coefficient of `var^i`, zero past the degree.
    pub fn coeff(&self, i: usize) -> R {
        self.coeffs.get(i).cloned().unwrap_or_else(R::zero)
    }

    pub fn leading(&self) -> Option<&R> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| c.is_one())
    }

    /// Horner evaluation.
    pub fn eval(&self, v: &R) -> R {
        self.coeffs
            .iter()
            .rev()
            .fold(R::zero(), |acc, c| acc * v + c)
    }

    /// Horner evaluation at an element of a ring containing the coefficients.
    pub fn eval_in<S: Algebra<R>>(&self, v: &S) -> S {
        self.coeffs
            .iter()
            .rev()
            .fold(S::zero(), |acc, c| acc * v + &S::from_scalar(c.clone()))
    }

    /// Formal derivative iterated `order` times.
    pub fn derivative(&self, order: usize) -> Self {
        if order == 0 {
            return self.clone();
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(order)
            .map(|(i, c)| {
                // i (i-1) ... (i-order+1)
                let falling = ((i - order + 1)..=i).fold(1u128, |acc, f| acc * f as u128);
                c.clone() * &ring_integer::<R>(falling)
            })
            .collect();
        UniPoly::new(coeffs, self.var)
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> UniPoly<S> {
        UniPoly::new(self.coeffs.iter().map(f).collect(), self.var)
    }

    pub fn scale(&self, k: &R) -> Self {
        UniPoly::new(self.coeffs.iter().map(|c| c.clone() * k).collect(), self.var)
    }

    fn merged_var(&self, other: &Self) -> &'static str {
        if self.coeffs.len() <= 1 {
            other.var
        } else {
            self.var
        }
    }
}

impl<K: Field> UniPoly<K> {
    /// Euclidean division; `None` when dividing by zero.
    pub fn div_rem(&self, divisor: &Self) -> Option<(Self, Self)> {
        let dd = divisor.degree()?;
        let lead_inv = divisor.leading()?.inv();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Some((UniPoly::new(vec![], self.var), self.clone()));
        }
        let mut quot = vec![K::zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = rem[i + dd].clone() * &lead_inv;
            if !c.is_zero() {
                for (j, d) in divisor.coeffs.iter().enumerate() {
                    rem[i + j] = rem[i + j].clone() - &(c.clone() * d);
                }
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        Some((UniPoly::new(quot, self.var), UniPoly::new(rem, self.var)))
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> Option<Self> {
        let lead = self.leading()?.inv();
        Some(self.scale(&lead))
    }
}

/// `n` as a ring element by double-and-add.
pub(crate) fn ring_integer<R: Ring>(n: u128) -> R {
    let mut acc = R::zero();
    let mut base = R::one();
    let mut n = n;
    while n > 0 {
        if n & 1 == 1 {
            acc = acc + &base;
        }
        n >>= 1;
        if n > 0 {
            base = base.clone() + &base;
        }
    }
    acc
}

impl<R: Ring> PartialEq for UniPoly<R> {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs
    }
}

impl<R: Ring> Zero for UniPoly<R> {
    fn zero() -> Self {
        UniPoly { coeffs: vec![], var: "x" }
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl<R: Ring> One for UniPoly<R> {
    fn one() -> Self {
        UniPoly::constant(R::one())
    }
}

impl<R: Ring> Neg for UniPoly<R> {
    type Output = Self;

    fn neg(self) -> Self {
        UniPoly { coeffs: self.coeffs.into_iter().map(|c| -c).collect(), var: self.var }
    }
}

impl<'a, R: Ring> Add<&'a UniPoly<R>> for UniPoly<R> {
    type Output = Self;

    fn add(self, rhs: &'a Self) -> Self {
        let var = self.merged_var(rhs);
        let mut coeffs = self.coeffs;
        if coeffs.len() < rhs.coeffs.len() {
            coeffs.resize(rhs.coeffs.len(), R::zero());
        }
        for (c, r) in coeffs.iter_mut().zip(&rhs.coeffs) {
            *c = c.clone() + r;
        }
        UniPoly::new(coeffs, var)
    }
}

impl<'a, R: Ring> Sub<&'a UniPoly<R>> for UniPoly<R> {
    type Output = Self;

    fn sub(self, rhs: &'a Self) -> Self {
        let var = self.merged_var(rhs);
        let mut coeffs = self.coeffs;
        if coeffs.len() < rhs.coeffs.len() {
            coeffs.resize(rhs.coeffs.len(), R::zero());
        }
        for (c, r) in coeffs.iter_mut().zip(&rhs.coeffs) {
            *c = c.clone() - r;
        }
        UniPoly::new(coeffs, var)
    }
}

impl<'a, R: Ring> Mul<&'a UniPoly<R>> for UniPoly<R> {
    type Output = Self;

    fn mul(self, rhs: &'a Self) -> Self {
        let var = self.merged_var(rhs);
        if self.is_zero() || rhs.is_zero() {
            return UniPoly { coeffs: vec![], var };
        }
        let mut coeffs = vec![R::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] = coeffs[i + j].clone() + &(a.clone() * b);
            }
        }
        UniPoly::new(coeffs, var)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl<R: Ring> $tr for UniPoly<R> {
            type Output = Self;

            fn $m(self, rhs: Self) -> Self {
                $tr::$m(self, &rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl<R: Ring> Algebra<R> for UniPoly<R> {
    fn from_scalar(k: R) -> Self {
        UniPoly::constant(k)
    }

    fn scale(&self, k: &R) -> Self {
        UniPoly::scale(self, k)
    }
}

impl<R: Ring + fmt::Display> fmt::Display for UniPoly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<(String, usize)> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (c.to_string(), i))
            .collect();
        write!(f, "{}", format_terms(&terms, |i| match i {
            0 => String::new(),
            1 => self.var.to_string(),
            _ => format!("{}^{}", self.var, i),
        }))
    }
}

/// Joins `(coefficient, exponent)` pairs into `a*x^2 - b*x + c` form.
pub(crate) fn format_terms<E: Copy>(terms: &[(String, E)], mono: impl Fn(E) -> String) -> String {
    if terms.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (idx, (c, e)) in terms.iter().enumerate() {
        let m = mono(*e);
        let compound = c.trim_start_matches('-').contains([' ', '+']);
        let (neg, body) = match c.strip_prefix('-') {
            Some(rest) if !compound => (true, rest.to_string()),
            _ => (false, c.clone()),
        };
        let body = if compound { format!("({body})") } else { body };
        let term = match (m.is_empty(), body.as_str()) {
            (true, _) => body.clone(),
            (false, "1") => m,
            (false, _) => format!("{body}*{m}"),
        };
        if idx == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        out.push_str(&term);
    }
    out
}
