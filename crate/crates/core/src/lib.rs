//! Exact arithmetic, complex ADHM data and their monads on P³.

pub mod adhm;
pub mod exactcore;
pub mod monad;

pub use exactcore::{Field, GaussRational, Matrix, QField, QLaurent, QRat, QRing, QSpec, Ring};

/// Matrices over Q(i).
pub type GaussMatrix = Matrix<GaussRational>;
/// Matrices over the field of rational functions in q.
pub type QMatrix = Matrix<QRat>;
