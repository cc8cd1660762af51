//! Coefficient rings and the containers built on top of them.
//!
//! Everything above this module is written against three small traits:
//!
//! * [`Ring`]: a commutative ring with identity. Polynomials, truncated
//!   inverse-power series and scalars all qualify.
//! * [`Field`]: a [`Ring`] with exact division.
//! * [`Scalar`]: a [`Field`] that can be built from integers and compared in
//!   magnitude. [`Rational`](crate::Rational) is the instantiation that gives
//!   exact answers; `f64` and `f32` are provided for quick numerical probing.
//!
//! The determinant used for every non-scalar ring is Berkowitz' division-free
//! algorithm, so it is valid over rings with zero divisors (truncated series)
//! and rings without division (polynomials).

mod matrix;
mod poly;
mod series;

pub use matrix::{det_berkowitz, det_cofactor, det_field, det_generic, vandermonde_product, RingMatrix};
pub use poly::UniPoly;
pub use series::{InverseSeries, Monomial, MAX_VARS};

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, One, Signed, ToPrimitive, Zero};

/// Commutative ring with identity.
pub trait Ring:
    Clone
    + PartialEq
    + fmt::Debug
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
    + Send
    + Sync
    + 'static
{
    fn pow(&self, exp: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = base.clone() * &base;
            }
        }
        acc
    }
}

impl<T> Ring for T where
    T: Clone
        + PartialEq
        + fmt::Debug
        + Zero
        + One
        + Neg<Output = T>
        + Add<Output = T>
        + Sub<Output = T>
        + Mul<Output = T>
        + for<'a> Add<&'a T, Output = T>
        + for<'a> Sub<&'a T, Output = T>
        + for<'a> Mul<&'a T, Output = T>
        + Send
        + Sync
        + 'static
{
}

/// A [`Ring`] with exact division by nonzero elements.
pub trait Field: Ring + Div<Output = Self> + for<'a> Div<&'a Self, Output = Self> {
    fn inv(&self) -> Self {
        Self::one() / self
    }
}

impl<T> Field for T where T: Ring + Div<Output = T> + for<'a> Div<&'a T, Output = T> {}

/// Base field of the library: a [`Field`] that contains the integers.
pub trait Scalar: Field + Signed + PartialOrd + FromPrimitive + fmt::Display {
    fn from_bigint(n: &BigInt) -> Self;

    /// Parses `"p"` or `"p/q"`.
    fn parse_scalar(s: &str) -> Option<Self>;

    fn from_ratio(num: i64, den: i64) -> Self {
        Self::from_i64(num).expect("i64 fits") / Self::from_i64(den).expect("i64 fits")
    }

    fn to_f64_lossy(&self) -> f64;
}

impl Scalar for BigRational {
    fn from_bigint(n: &BigInt) -> Self {
        BigRational::from_integer(n.clone())
    }

    fn parse_scalar(s: &str) -> Option<Self> {
        let s = s.trim();
        let parsed: BigRational = match s.split_once('/') {
            Some((p, q)) => {
                let p: BigInt = p.trim().parse().ok()?;
                let q: BigInt = q.trim().parse().ok()?;
                if q.is_zero() {
                    return None;
                }
                BigRational::new(p, q)
            }
            None => BigRational::from_integer(s.parse().ok()?),
        };
        Some(parsed)
    }

    fn to_f64_lossy(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

macro_rules! float_scalar {
    ($t:ty) => {
        impl Scalar for $t {
            fn from_bigint(n: &BigInt) -> Self {
                n.to_f64().unwrap_or(f64::NAN) as $t
            }

            fn parse_scalar(s: &str) -> Option<Self> {
                let exact = BigRational::parse_scalar(s)?;
                Some(exact.to_f64()? as $t)
            }

            fn to_f64_lossy(&self) -> f64 {
                *self as f64
            }
        }
    };
}

float_scalar!(f64);
float_scalar!(f32);

/// A ring that contains a copy of the scalars `K`.
pub trait Algebra<K: Ring>: Ring {
    fn from_scalar(k: K) -> Self;

    fn scale(&self, k: &K) -> Self;
}

impl<K: Ring> Algebra<K> for K {
    fn from_scalar(k: K) -> Self {
        k
    }

    fn scale(&self, k: &K) -> Self {
        self.clone() * k
    }
}

/// `n!` as a big integer.
pub fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// Binomial coefficient `C(n, k)`; zero when `k > n`.
pub fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    factorial(n) / (factorial(k) * factorial(n - k))
}

/// Catalan number `C_n = binom(2n, n) / (n + 1)`.
pub fn catalan(n: u32) -> BigInt {
    binomial(2 * n, n) / BigInt::from(n + 1)
}

/// `(-1)^e` as a ring element.
pub fn sign<R: Ring>(e: usize) -> R {
    if e.is_multiple_of(2) {
        R::one()
    } else {
        -R::one()
    }
}
