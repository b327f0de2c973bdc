//! Quantum Minkowski space, q-calculus and quantum ADHM operators.

pub mod qcalculus;
pub mod qinstanton;
pub mod qspacetime;

pub use qspacetime::{Chart, HarmonicIndex, NcPoly};

/// Normal-form polynomials with Laurent coefficients.
pub type QPoly = NcPoly<qadhm_core::QLaurent>;
