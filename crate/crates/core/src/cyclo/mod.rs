//! Exact arithmetic in cyclotomic fields and matrices over them.
//!
//! Numbers are kept in canonical form modulo the cyclotomic polynomial, so
//! equality is a coefficient comparison after lifting to a common conductor.

mod matrix;
mod num;
pub(crate) mod poly;

pub use matrix::CycloMatrix;
pub use num::{ComplexApprox, CycloNum};
pub use poly::{cyclotomic, euler_phi};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CycloError {
    #[error("malformed cyclotomic entry `{0}`")]
    ParseEntry(String),
    #[error("conductor {to} is not a multiple of {from}")]
    NotAMultiple { from: u32, to: u32 },
    #[error("a {dim}x{dim} matrix cannot hold {entries} entries")]
    Shape { dim: usize, entries: usize },
    #[error("matrix order exceeds {0}")]
    OrderExceedsCap(u64),
    #[error("trace multiplicities are not nonnegative integers")]
    NotDiagonalizableConsistency,
}
