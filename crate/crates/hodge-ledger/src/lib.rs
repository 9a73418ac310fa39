//! A formal model of the Hodge realization of motivic iterated integrals.
//!
//! The topological cycles `ξ_γ(A)` and `σρ(B)` enter only through their
//! differentials, which makes `Z_γ(A)` an element of a bar complex whose
//! closedness can be checked exactly. Its period map `Λ` is realized
//! numerically, and the comparison map from the path torsor is compared
//! with `Λ(Z_γ(A))` on the generating series `Φ(γ)`.

pub mod compare;
pub mod formal;
pub mod realize;

pub use compare::{comparison_map, framing_data, phi_image, Framing};
pub use formal::{
    build_z_gamma, formal_differential, FormalGen, FormalModule, SigmaCycle, XiSymbol, ZGammaElement,
};
pub use realize::{evaluate_point, lambda_realize, Realization, RealizedTerm};

use period_lab::PeriodError;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum LedgerError {
    #[error("{seq} is not admitted by the {theory} theory")]
    NotAdmitted { theory: String, seq: String },
    #[error("{0} diverges at an endpoint; regularize it first")]
    NeedsRegularization(String),
    #[error("no value for the variable {0}")]
    MissingValue(String),
    #[error("path runs from {found} but the sequence needs {expected}")]
    PathMismatch { expected: String, found: String },
    #[error(transparent)]
    Period(#[from] PeriodError),
}
