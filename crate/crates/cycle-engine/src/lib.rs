//! Algebraic cycles attached to sequences: parametrized cycles in cubes,
//! their faces and differential, and three integration theories.

pub mod cycle;
pub mod dump;
pub mod theory;
pub mod trees;
pub mod verify;

pub use cycle::{
    admissible_check, attach, canonical, differential, ext, face_restrict, int, product,
    specialize, Cycle, Slot, Term, Violation,
};
pub use dump::{dump, dump_string};
pub use theory::{
    delta_apply, delta_coeff, rho_hat1, rho_hat1_at, sp_specialize, DeltaRule, Engine, Theory,
};
pub use trees::{tree_terms, Tree, TreeTerm};
pub use verify::{verify_theory, Check, Report};

use exact_kernel::KernelError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CycleError {
    #[error("{seq} is not admitted by the {theory} theory")]
    NotAdmitted { theory: String, seq: String },
    #[error("unsupported shape: {0}")]
    UnsupportedShape(String),
    #[error("improper intersection: {0}")]
    NonProper(String),
    #[error("inadmissible specialization: {0}")]
    InadmissibleSpecialization(String),
    #[error("`{0}` is reserved for cycle parameters")]
    ReservedName(String),
    #[error(transparent)]
    Kernel(#[from] KernelError),
}
