//! Small networks with the same terminal cuts as a larger one.

mod general;
mod inequalities;
mod single_source;
mod star;

pub use general::build_mimic_general;
pub use inequalities::{check_four_way, check_three_way};
pub use single_source::{build_mimic4_single_source, Mimic4SSSpec};
pub use star::{
    build_mimic2, build_mimic3, build_mimic3_undirected, build_small_mimic, merge_mimics,
    Mimic3Spec, UndirectedTriangle,
};

use thiserror::Error;

use crate::flow::{CutMode, FlowError, VertexId};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MimicError {
    #[error(transparent)]
    Flow(#[from] FlowError),
    #[error("expected a {expected} cut table, got {got}")]
    WrongMode { expected: CutMode, got: CutMode },
    #[error("construction needs {expected} terminals, got {got}")]
    TerminalCount { expected: usize, got: usize },
    #[error("negative cut value {0}")]
    NegativeValue(i64),
    #[error("derived capacity {edge} = {value} is negative; the cut table is inconsistent")]
    NegativeCapacity { edge: &'static str, value: i64 },
    #[error("cut table violates the three-way inequalities")]
    InconsistentTable,
    #[error("networks share vertex {0}, which is not a listed terminal")]
    TerminalMismatch(VertexId),
    #[error("terminal {0} missing from a network being merged")]
    MissingTerminal(VertexId),
}
