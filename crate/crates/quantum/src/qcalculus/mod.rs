//! First-order differential calculus on M^I: the derived dx/x table,
//! exterior derivative, partial derivatives, Laplacians, Hodge star,
//! self-dual / anti-self-dual split and the scalar Penrose map.

pub mod forms;
pub mod ops;
pub mod sym;
pub mod table;

pub use forms::{Engine, Form, Word};
pub use ops::{
    asd_membership, conjugation_identity_check, eigen_recurrence, penrose_scalar, penrose_slice, resolve_recurrence,
    tilde_eigenvalue, AsdReport, CalcError, Calculus, CechMonomial, Duality, EigenReport, PenroseSliceReport,
    RecurrenceVerdict, VOLUME,
};
pub use table::{derive_table, verify_oracles, CalculusTable, OracleCheck, PChoice, TableError};
