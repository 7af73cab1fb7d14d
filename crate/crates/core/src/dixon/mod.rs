//! Character tables by the Dixon–Schneider method.
//!
//! Class matrices are diagonalized over `F_p` with `p ≡ 1 (mod exp G)`, and
//! character values are lifted to multiplicity vectors of roots of unity.

mod cyclo;
mod field;
mod table;
mod verify;

pub use cyclo::{cyclotomic_poly, CycloAcc, CyclotomicValue};
pub use field::{dixon_prime, Fp};
pub use table::{dixon_from_classes, dixon_table, CharRow, CharTable, DixonOptions, CLASS_CAP, MAX_SPLIT_ATTEMPTS};
pub use verify::{verify_table, TableReport};

use thiserror::Error;

use crate::perm::PermError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DixonError {
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error("{count} classes exceed the oracle cap of {cap}")]
    ClassCap { count: usize, cap: usize },
    #[error("no prime p = 1 mod {exponent} below 2^31")]
    NoPrime { exponent: u64 },
    #[error("eigenspaces did not split after {attempts} random attempts; retry with another seed")]
    SplitFailed { attempts: usize },
    #[error("lifting failed: {0}")]
    Lift(String),
    #[error("table failed verification: {0}")]
    Verification(String),
}
