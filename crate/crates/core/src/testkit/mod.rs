//! Independent oracles, random instances and audits used to check the rest
//! of the crate.

mod audit;
mod gen;
mod minor;
mod oracle;
mod random;

pub use audit::audit_step_values;
pub use gen::{gen_instance, Family, GenConfig};
pub use minor::{minor_free_check, Forbidden, MINOR_CHECK_LIMIT};

pub use oracle::{oracle_cut_table, oracle_max_flow, oracle_min_cut, ENUMERATION_LIMIT};
pub use random::random_network;

use thiserror::Error;

use crate::flow::{FlowError, VertexId};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TestkitError {
    #[error("network has {size} vertices; enumeration is limited to {limit}")]
    TooLarge { size: usize, limit: usize },
    #[error("terminal {0} is not in the network")]
    UnknownTerminal(VertexId),
    #[error(transparent)]
    Flow(#[from] FlowError),
}
