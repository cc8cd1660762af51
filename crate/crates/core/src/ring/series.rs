use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::poly::format_terms;
use super::{Algebra, Ring};

/// Maximum number of inverse variables a series can carry.
pub const MAX_VARS: usize = 4;

/// Exponent vector; slot `l` is the power of `w_l = 1 / y_l`.
pub type Monomial = [u16; MAX_VARS];

fn total_degree(m: &Monomial) -> u32 {
    m.iter().map(|&e| e as u32).sum()
}

const INF: u64 = u64::MAX;

/// Multivariate power series in `w_l = 1 / y_l`, truncated by total degree.
///
/// `order` is the truncation bound: every term of total degree `< order` is
/// known, nothing is known beyond it. `None` means the series is exact (a
/// polynomial in the `w_l`). Truncation orders propagate through arithmetic,
/// so a product of series is only trusted as far as its factors allow.
#[derive(Clone, Debug, PartialEq)]
pub struct InverseSeries<R> {
    order: Option<u32>,
    // sorted by (total degree, monomial), no zero coefficients
    terms: Vec<(Monomial, R)>,
}

impl<R: Ring> InverseSeries<R> {
    /// Builds a series known to total degree `< order`; terms beyond are
    /// discarded, repeated monomials are summed.
    pub fn from_terms(order: Option<u32>, terms: impl IntoIterator<Item = (Monomial, R)>) -> Self {
        let mut acc: BTreeMap<(u32, Monomial), R> = BTreeMap::new();
        for (m, c) in terms {
            let d = total_degree(&m);
            if order.is_some_and(|t| d >= t) {
                continue;
            }
            match acc.entry((d, m)) {
                std::collections::btree_map::Entry::Occupied(mut e) => {
                    let v = e.get().clone() + &c;
                    *e.get_mut() = v;
                }
                std::collections::btree_map::Entry::Vacant(e) => {
                    e.insert(c);
                }
            }
        }
        InverseSeries {
            order,
            terms: acc
                .into_iter()
                .filter(|(_, c)| !c.is_zero())
                .map(|((_, m), c)| (m, c))
                .collect(),
        }
    }

    pub fn constant(c: R) -> Self {
        Self::from_terms(None, [([0; MAX_VARS], c)])
    }

    /// Exact monomial `c * prod w_l^exps[l]`.
    pub fn monomial(exps: Monomial, c: R) -> Self {
        Self::from_terms(None, [(exps, c)])
    }

    /// `w_var^power`, exact.
    pub fn w_power(var: usize, power: u16) -> Self {
        let mut m = [0; MAX_VARS];
        m[var] = power;
        Self::monomial(m, R::one())
    }

    pub fn order(&self) -> Option<u32> {
        self.order
    }

    pub fn terms(&self) -> &[(Monomial, R)] {
        &self.terms
    }

    pub fn coeff(&self, m: &Monomial) -> R {
        self.terms
            .iter()
            .find(|(k, _)| k == m)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(R::zero)
    }

    /// Lowest total degree that can be nonzero: the least stored degree,
    /// the truncation order when nothing is stored, `None` for exact zero.
    pub fn valuation(&self) -> Option<u32> {
        self.terms.first().map(|(m, _)| total_degree(m)).or(self.order)
    }

    /// Drops everything of total degree `>= order`.
    pub fn truncate(&self, order: u32) -> Self {
        let order = self.order.map_or(order, |t| t.min(order));
        InverseSeries {
            order: Some(order),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| total_degree(m) < order)
                .cloned()
                .collect(),
        }
    }

    /// Multiplies every exponent of variable `var` up by `shift`; exact when
    /// `self` is, otherwise the order grows by `shift` as well.
    pub fn shift_var(&self, var: usize, shift: u16) -> Self {
        let terms = self.terms.iter().map(|(m, c)| {
            let mut m = *m;
            m[var] += shift;
            (m, c.clone())
        });
        Self::from_terms(self.order.map(|t| t + shift as u32), terms)
    }

    /// The truncation order up to which both series are known.
    pub fn common_order(&self, other: &Self) -> Option<u32> {
        match (self.order, other.order) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        }
    }

    /// Compares the two series below their common order. Returns the first
    /// monomial (in degree order) on which they differ.
    pub fn first_difference(&self, other: &Self) -> Option<(Monomial, R, R)> {
        let diff = self.clone() - other;
        diff.terms
            .first()
            .map(|(m, _)| (*m, self.coeff(m), other.coeff(m)))
    }

    pub fn agrees_with(&self, other: &Self) -> bool {
        self.first_difference(other).is_none()
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> InverseSeries<S> {
        InverseSeries::from_terms(self.order, self.terms.iter().map(|(m, c)| (*m, f(c))))
    }
}

impl<R: Ring> Zero for InverseSeries<R> {
    fn zero() -> Self {
        InverseSeries { order: None, terms: vec![] }
    }

    fn is_zero(&self) -> bool {
        self.order.is_none() && self.terms.is_empty()
    }
}

impl<R: Ring> One for InverseSeries<R> {
    fn one() -> Self {
        Self::constant(R::one())
    }
}

impl<R: Ring> Neg for InverseSeries<R> {
    type Output = Self;

    fn neg(self) -> Self {
        InverseSeries {
            order: self.order,
            terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect(),
        }
    }
}

impl<'a, R: Ring> Add<&'a InverseSeries<R>> for InverseSeries<R> {
    type Output = Self;

    fn add(self, rhs: &'a Self) -> Self {
        let order = self.common_order(rhs);
        let terms = self.terms.into_iter().chain(rhs.terms.iter().cloned());
        Self::from_terms(order, terms)
    }
}

impl<'a, R: Ring> Sub<&'a InverseSeries<R>> for InverseSeries<R> {
    type Output = Self;

    fn sub(self, rhs: &'a Self) -> Self {
        let order = self.common_order(rhs);
        let terms = self
            .terms
            .into_iter()
            .chain(rhs.terms.iter().map(|(m, c)| (*m, -c.clone())));
        Self::from_terms(order, terms)
    }
}

impl<'a, R: Ring> Mul<&'a InverseSeries<R>> for InverseSeries<R> {
    type Output = Self;

    fn mul(self, rhs: &'a Self) -> Self {
        let inf = |o: Option<u32>| o.map_or(INF, u64::from);
        let (tf, tg) = (inf(self.order), inf(rhs.order));
        let (vf, vg) = (inf(self.valuation()), inf(rhs.valuation()));
        let bound = tf.saturating_add(vg).min(tg.saturating_add(vf));
        let order = (bound < INF).then(|| bound.min(u32::MAX as u64) as u32);

        let mut products = Vec::new();
        for (mf, cf) in &self.terms {
            let df = total_degree(mf) as u64;
            for (mg, cg) in &rhs.terms {
                if df + total_degree(mg) as u64 >= bound {
                    break;
                }
                let mut m = *mf;
                for (e, g) in m.iter_mut().zip(mg) {
                    *e += g;
                }
                products.push((m, cf.clone() * cg));
            }
        }
        Self::from_terms(order, products)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl<R: Ring> $tr for InverseSeries<R> {
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

impl<R: Ring> Algebra<R> for InverseSeries<R> {
    fn from_scalar(k: R) -> Self {
        Self::constant(k)
    }

    fn scale(&self, k: &R) -> Self {
        Self::from_terms(self.order, self.terms.iter().map(|(m, c)| (*m, c.clone() * k)))
    }
}

impl<R: Ring + fmt::Display> fmt::Display for InverseSeries<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<(String, Monomial)> = self
            .terms
            .iter()
            .map(|(m, c)| (c.to_string(), *m))
            .collect();
        let body = format_terms(&terms, |m| {
            m.iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(l, &e)| format!("y{}^-{}", l + 1, e))
                .collect::<Vec<_>>()
                .join("*")
        });
        match self.order {
            Some(t) if body == "0" => write!(f, "O({t})"),
            Some(t) => write!(f, "{body} + O({t})"),
            None => write!(f, "{body}"),
        }
    }
}
