//! Numerical periods: multiple polylogarithms by nested series, iterated
//! integrals along piecewise linear paths by quadrature and by local power
//! series, tangential regularization, the generating series `Φ` of a path
//! and an exact check of the mixed Hodge-Tate condition.

pub mod config;
pub mod mhts;
pub mod path;
pub mod phi;
pub mod polylog;
pub mod quad;
pub mod regularized;
pub mod segment;

pub use config::NumericConfig;
pub use mhts::{mhts_check, FramedMhts, LevelReport, MhtsReport, PeriodEntry};
pub use path::PathSpec;
pub use phi::{feynman_dyson, shuffle_residual, PhiSeries};
pub use polylog::{li_word, multiple_polylog, zeta};
pub use quad::iterated_integral;
pub use regularized::{epsilon_extrapolate, epsilon_extrapolate_with, regularized_iterated_integral, symbol_value};
pub use segment::{segment_integral, segment_words};

pub use num_complex::Complex64 as C64;

/// A numerical value with the method that produced it and an error bound.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Evaluation {
    pub value: C64,
    pub error_bound: f64,
    pub method: &'static str,
}

impl Evaluation {
    pub fn new(value: C64, error_bound: f64, method: &'static str) -> Self {
        Evaluation { value, error_bound, method }
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum PeriodError {
    #[error("series diverges: {0}")]
    DivergentSeries(String),
    #[error("integral diverges at {0}: first or last letter equals the endpoint")]
    SingularEndpoint(String),
    #[error("path meets the puncture {0}")]
    PathHitsPuncture(String),
    #[error("invalid path: {0}")]
    InvalidPath(String),
    #[error("regularization methods disagree: algebraic {algebraic}, extrapolated {extrapolated}")]
    RegularizationMismatch { algebraic: C64, extrapolated: C64 },
    #[error("tolerance {0} not reached")]
    Tolerance(f64),
    #[error("invalid configuration: {0}")]
    Config(String),
}
