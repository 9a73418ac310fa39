//! Sequences over a field, their cuts, the free graded-commutative algebra
//! they generate with `dA = -Σ A'A''`, the bar elements `T(A)`, and linear
//! reduction modulo path, shuffle, reversal and loop relations.

use thiserror::Error;

pub mod algebra;
pub mod cuts;
pub mod ideal;
pub mod regularize;
pub mod sequence;

pub use algebra::{AlgElement, Cs, Mono};
pub use cuts::{
    all_cut_indices, all_cuts, elementary_cut_classes, elementary_cuts, is_elementary, realize,
    two_cuts, Cut, Piece,
};
pub use ideal::{shuffle_words, RelationIdeal, RelationKinds};
pub use regularize::{certify, expand, regularize, regularize_certified, TMono, TPoly};
pub use sequence::Sequence;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DgaError {
    #[error("a generator needs at least one interior entry")]
    EmptyInterior,
    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("entry {0} is outside the declared alphabet")]
    AlphabetOverflow(String),
}
