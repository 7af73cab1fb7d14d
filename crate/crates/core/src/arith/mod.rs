//! Exact integer arithmetic: factored integers, integer polynomials,
//! positivity certificates and the formula mini-language.

mod expr;
mod factored;
mod poly;
mod positivity;

pub use expr::{Env, Expr, RationalExpr};
pub(crate) use factored::pow_mod;
pub use factored::{is_prime, is_prime_power, FactoredInt};
pub use poly::IntPoly;
pub use positivity::{
    cauchy_bound, first_certified_start, positivity_beyond, Coverage, PositivityCertificate, ENUMERATION_LIMIT,
};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ArithError {
    #[error("value {0} is outside the domain (must be positive)")]
    Domain(i128),
    #[error("integer overflow")]
    Overflow,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{dividend} is not divisible by {divisor}")]
    InexactDivision { dividend: String, divisor: String },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unbound variable `{0}`")]
    Unbound(String),
    #[error("polynomial {0} does not have a positive leading coefficient")]
    NonPositiveLeading(String),
    #[error("positivity fails at q = {at} (value {value})")]
    PositivityFails { at: i128, value: i128 },
    #[error("cannot certify positivity of {0}: shifted coefficients have mixed signs")]
    CannotCertify(String),
    #[error("certificate mismatch: {0}")]
    CertificateMismatch(String),
    #[error("{0} is not a perfect square")]
    NotSquare(i128),
    #[error("`{0}` is not polynomial in the chosen variable")]
    NotPolynomial(String),
}
