//! Non-commutative power series on paths between two points, the coaction
//! by the bar construction of the cut algebra, and its image under a
//! cycle map.

pub mod coaction;
pub mod motivic;
pub mod series;

pub use coaction::{
    comodule_check, comodule_check_with, concatenation_defect, path_compatibility, Coacted,
    CoactedPair, Comodule, ComoduleReport, Law, LawFailure,
};
pub use motivic::{motivic_coaction, push_forward, term_adams, MotivicCoacted};
pub use series::{path_compose, NcSeries, Word};

use cut_dga::DgaError;
use cycle_engine::CycleError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ComoduleError {
    #[error("cannot parse word `{text}`: {msg}")]
    Parse { text: String, msg: String },
    #[error("paths do not compose: first ends at {left}, second starts at {right}")]
    EndpointMismatch { left: String, right: String },
    #[error("truncation depths differ: {0} and {1}")]
    DepthMismatch(usize, usize),
    #[error("letter {0} is not in the alphabet")]
    Alphabet(String),
    #[error(transparent)]
    Dga(#[from] DgaError),
    #[error(transparent)]
    Cycle(#[from] CycleError),
}
