//! Exact scalars (Q(i), Laurent polynomials in q, rational functions in q)
//! and exact linear algebra over them.

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

pub mod gauss;
pub mod hgcd;
pub mod laurent;
pub mod matrix;
pub mod pencil;
pub mod qrat;
pub mod upoly;

pub use gauss::GaussRational;
pub use hgcd::{gaussian_roots, homogeneous_gcd, HomPoly};
pub use laurent::{qbinom, qbrace, qfact, qint, QLaurent};
pub use matrix::Matrix;
pub use pencil::Pencil;
pub use qrat::{QRat, QSpec};
pub use upoly::UPoly;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("cannot parse scalar {0:?}")]
    Scalar(String),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExactError {
    #[error("argument out of range: {0}")]
    Domain(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("inconsistent linear system")]
    Inconsistent,
    #[error("singular matrix")]
    Singular,
    #[error("empty input")]
    Empty,
}

/// A commutative field with exact equality.
pub trait Field:
    Clone
    + Debug
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn inverse(&self) -> Self {
        Self::one() / self.clone()
    }
}

impl<T> Field for T where
    T: Clone
        + Debug
        + PartialEq
        + Zero
        + One
        + Add<Output = T>
        + Sub<Output = T>
        + Mul<Output = T>
        + Div<Output = T>
        + Neg<Output = T>
{
}

/// A commutative ring with exact equality.
pub trait Ring:
    Clone
    + Debug
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
}

impl<T> Ring for T where
    T: Clone + Debug + PartialEq + Zero + One + Add<Output = T> + Sub<Output = T> + Mul<Output = T> + Neg<Output = T>
{
}

/// A ring containing Q(i) and a distinguished invertible element q.
pub trait QRing: Ring {
    fn q_pow(e: i32) -> Self;
    fn from_gauss(g: &GaussRational) -> Self;

    fn from_int(n: i64) -> Self {
        Self::from_gauss(&GaussRational::from_int(n))
    }

    fn from_laurent(l: &QLaurent) -> Self {
        let mut acc = Self::zero();
        for (e, c) in l.terms() {
            acc = acc + Self::from_gauss(c) * Self::q_pow(*e);
        }
        acc
    }

    /// Quantum integer `[n]`.
    fn qint(n: i64) -> Self {
        Self::from_laurent(&qint(n))
    }
}

/// A field version of [`QRing`]: formal q ([`QRat`]) or a fixed
/// specialization ([`QSpec`]).
pub trait QField: Field + QRing {}

impl<T: Field + QRing> QField for T {}

impl QRing for QLaurent {
    fn q_pow(e: i32) -> Self {
        QLaurent::q_pow(e)
    }
    fn from_gauss(g: &GaussRational) -> Self {
        QLaurent::constant(g.clone())
    }
    fn from_laurent(l: &QLaurent) -> Self {
        l.clone()
    }
}
