//! Network representation, exact max-flow/min-cut, and external flows.
//!
//! Every value here is an integer: capacities, flows, demands and cut values.
//! "Infinite" capacities used for super-terminals are encoded as one more
//! than the total capacity of the network.

mod assignment;
mod cuts;
mod external;
mod maxflow;
mod network;

pub use assignment::FlowAssignment;
pub use cuts::{cut_table, min_cut, min_cut_value, CutMode, CutTable, TerminalSet, MAX_TERMINALS};
pub use external::{
    check_external_realizable, route_external_flow, verify_flow, ExternalFlowDemand, FlowCheck,
    Violation,
};
pub use maxflow::{max_flow, max_flow_with, Dinic, MaxFlow, MaxFlowBackend, ResidualGraph};
pub use network::{Edge, EdgeId, FlowNetwork, FreshIds, VertexId};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FlowError {
    #[error("self-loop at vertex {0}")]
    SelfLoop(VertexId),
    #[error("duplicate edge id {0}")]
    DuplicateEdge(EdgeId),
    #[error("unknown edge id {0}")]
    UnknownEdge(EdgeId),
    #[error("unknown vertex {0}")]
    UnknownVertex(VertexId),
    #[error("source and sink are both {0}")]
    SameSourceSink(VertexId),
    #[error("cut sides overlap at vertex {0}")]
    OverlappingCutSides(VertexId),
    #[error("cut side is empty")]
    EmptyCutSide,
    #[error("unsupported terminal count {0}")]
    TerminalCount(usize),
    #[error("terminal listed twice")]
    RepeatedTerminal,
    #[error("source index {0} out of range")]
    SourceIndex(usize),
    #[error("single-source table requires a designated source")]
    MissingSource,
    #[error("demand values sum to {0}, not zero")]
    UnbalancedDemand(i64),
    #[error("single-source demand has a supply at non-source terminal index {0}")]
    SupplyAtSink(usize),
    #[error("demand has {got} values for {expected} terminals")]
    DemandLength { expected: usize, got: usize },
    #[error("cut table mode does not match the demand")]
    ModeMismatch,
    #[error("cut table has no entry for mask {0:#b}")]
    MissingEntry(u32),
    #[error("external flow infeasible: routed {routed} of {required}")]
    InfeasibleDemand { routed: u64, required: u64 },
}
