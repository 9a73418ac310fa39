//! Exact arithmetic shared by every other crate in the workspace.
//!
//! Scalars are arbitrary precision rationals. Field elements are rational
//! functions in named indeterminates, kept in a canonical reduced form so
//! that structural equality is mathematical equality.

pub mod field;
pub mod lincomb;
pub mod linear;
pub mod parse;
pub mod poly;

pub use field::{Affine, FieldElement, Target};
pub use lincomb::Lin;
pub use linear::{span_reduce, LinearSpan, SpanAnswer};
pub use parse::parse_field;
pub use poly::{Monomial, Poly, Var};

use num_bigint::BigInt;
use num_rational::BigRational;

/// Exact rational scalar.
pub type Q = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum KernelError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("expression is not affine in `{0}`")]
    NonAffine(String),
    #[error("leading coefficient in `{0}` is not a nonzero constant")]
    NonConstantLeadingCoefficient(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qf(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Formats a rational as `p` or `p/q`.
pub fn fmt_q(c: &Q) -> String {
    if c.denom() == &BigInt::from(1) {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

pub fn q_to_f64(c: &Q) -> f64 {
    use num_traits::ToPrimitive;
    c.to_f64().unwrap_or(f64::NAN)
}
