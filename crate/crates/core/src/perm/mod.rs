//! Permutation groups small enough to enumerate element by element.

mod classes;
mod group;
mod permutation;

pub use classes::{
    class_mult_coeff, class_mult_column, class_mult_column_at, class_mult_tensor, conjugacy_classes,
    normal_subgroups_small, quotient_group, union_is_closed, ClassData, NORMAL_SEARCH_CLASS_CAP,
    NORMAL_SEARCH_ORDER_CAP,
};
pub use group::{EnumeratedGroup, PermGroup, MAX_ORDER};
pub use permutation::Permutation;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PermError {
    #[error("cannot parse permutation data: {0}")]
    Parse(String),
    #[error("not a bijection: {0}")]
    NotBijection(String),
    #[error("point {point} out of range for degree {degree}")]
    PointOutOfRange { point: usize, degree: usize },
    #[error("degree {0} exceeds the supported maximum")]
    DegreeTooLarge(usize),
    #[error("generator has degree {got}, expected {expected}")]
    DegreeMismatch { expected: usize, got: usize },
    #[error("group {0} lists the identity among several generators")]
    IdentityGenerator(String),
    #[error("enumeration exceeded the cap of {0} elements")]
    OrderCap(usize),
    #[error("expected order {expected}, enumeration found {got}")]
    OrderMismatch { expected: u64, got: u64 },
    #[error("union of classes is not a subgroup: {0}")]
    NotSubgroup(String),
    #[error("{count} classes exceed the cap of {cap}")]
    ClassCap { count: usize, cap: usize },
    #[error("{0}")]
    Io(String),
}
