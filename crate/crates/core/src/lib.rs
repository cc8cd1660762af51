//! Exact verification of a determinant identity that expresses Hankel
//! determinants of rationally modified moments through orthogonal
//! polynomials `p_n` and their second-kind functions `q_n`.
//!
//! The building blocks live in [`ring`] (scalars, polynomials, truncated
//! inverse-power series, determinants), [`moments`] (moment functionals and
//! Hankel determinants) and [`orthopoly`] (the orthogonal system of a
//! functional). [`identity`] assembles and checks both sides of the main
//! identity, its confluent form, the Uvarov construction and the condensation
//! lemmas. [`chebyshev`] specializes everything to the Chebyshev-U weight,
//! whose moments are the Catalan numbers.
//!
//! Everything is generic over a [`ring::Scalar`]; [`Rational`] gives exact
//! answers and is what the verifiers are meant to run on.
//!
//! ```
//! use opident::{MomentFunctional, Rational};
//!
//! let cat = MomentFunctional::<Rational>::chebyshev();
//! assert_eq!(cat.moment(8).unwrap(), Rational::from_integer(14.into()));
//! assert_eq!(cat.hankel_det(5).unwrap(), Rational::from_integer(1.into()));
//! ```

pub mod chebyshev;
pub mod identity;
pub mod moments;
pub mod orthopoly;
pub mod random;
pub mod report;
pub mod ring;
pub mod sweep;

pub use identity::{ConfluentInstance, IdentityInstance, YParams};
pub use moments::{Backend, MomentFunctional};
pub use orthopoly::OrthoSystem;
pub use report::VerificationReport;
pub use ring::{Algebra, Field, InverseSeries, Ring, RingMatrix, Scalar, UniPoly};

/// Arbitrary-precision rational, always in lowest terms with positive
/// denominator.
pub type Rational = num_rational::BigRational;
/// Polynomial over [`Rational`].
pub type QPoly = UniPoly<Rational>;
/// Polynomial in two variables: outer variable over [`QPoly`].
pub type QBiPoly = UniPoly<QPoly>;
/// Truncated inverse-power series over [`Rational`].
pub type QSeries = InverseSeries<Rational>;
pub type QMatrix = RingMatrix<Rational>;
pub type QFunctional = MomentFunctional<Rational>;
pub type QSystem = OrthoSystem<Rational>;
/// Polynomial in the formal symbol `X` standing for the Cauchy transform of
/// the Chebyshev weight.
pub type XPoly = UniPoly<Rational>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("moment horizon exceeded: need mu_{needed}, functional provides up to mu_{available}")]
    Horizon { needed: usize, available: usize },
    #[error("pole at atom {0}")]
    Pole(String),
    #[error("degenerate functional: Hankel determinant H({0}) vanishes")]
    Degenerate(usize),
    #[error("unsupported backend: {0}")]
    Mode(String),
    #[error("coincident parameters {0}; use the confluent form")]
    Coincident(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
