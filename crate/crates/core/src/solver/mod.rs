//! Maximum flow on a clique-sum decomposed network.
//!
//! Components off the s-t path of the decomposition tree are replaced by
//! mimicking networks on their gluing cliques (phase I). The path is then
//! folded from s's end, each step replacing everything behind the next
//! clique by a single-source mimic (phase II). One max-flow run on the
//! final small network is expanded back by replaying the replacements in
//! reverse.

mod path;
mod phase1;
mod phase2;
mod reconstruct;
mod state;

pub use path::{home_component, locate_terminal_path, TerminalPath};
pub use phase1::phase1;
pub use phase2::phase2;
pub use reconstruct::reconstruct;
pub use state::{
    Phase, Provenance, ReplacementRecord, SolveState, SolveTrace, StepKind, TraceStep,
};

use thiserror::Error;

use crate::decomp::{
    decompose_k33_free, decompose_k5_free, refine, validate, DecompError, DecompositionTree,
};
use crate::flow::{max_flow, FlowAssignment, FlowError, FlowNetwork, VertexId};
use crate::mimic::MimicError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SolveError {
    #[error("terminal {0} is not in the network")]
    MissingTerminal(VertexId),
    #[error("decomposition does not match the network: {}", .0.join("; "))]
    InvalidTree(Vec<String>),
    #[error(transparent)]
    Decomp(#[from] DecompError),
    #[error(transparent)]
    Flow(#[from] FlowError),
    #[error(transparent)]
    Mimic(#[from] MimicError),
    #[error("restoring replacement {record} failed: {source}")]
    ReconstructionFailed { record: usize, source: FlowError },
    #[error("internal invariant broken: {0}")]
    Internal(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MinorFamily {
    K33Free,
    K5Free,
}

fn solve(
    graph: &FlowNetwork,
    tree: &DecompositionTree,
    s: VertexId,
    t: VertexId,
    traced: bool,
) -> Result<(u64, FlowAssignment, Option<SolveTrace>), SolveError> {
    if s == t {
        return Err(FlowError::SameSourceSink(s).into());
    }
    for v in [s, t] {
        if !graph.contains_vertex(v) {
            return Err(SolveError::MissingTerminal(v));
        }
    }
    let report = validate(graph, tree);
    if !report.is_valid() {
        return Err(SolveError::InvalidTree(report.diagnostics));
    }
    let refined = refine(tree)?;
    let path = locate_terminal_path(&refined, s, t)?;
    let mut state = SolveState::new(refined)?;
    if traced {
        state.enable_trace(s, t)?;
    }
    phase1(&mut state, &path)?;
    let final_network = phase2(&mut state, &path, s, t)?;
    let result = max_flow(&final_network, s, t)?;
    let flow = reconstruct(&mut state, &final_network, result.flow)?;
    if let Some((e, _)) = flow.iter().find(|(e, _)| !graph.contains_edge(*e)) {
        return Err(SolveError::Internal(format!("flow on foreign edge {e}")));
    }
    Ok((result.value, flow, state.trace))
}

/// Exact s-t maximum flow using a decomposition tree of `graph`.
pub fn max_flow_decomposed(
    graph: &FlowNetwork,
    tree: &DecompositionTree,
    s: VertexId,
    t: VertexId,
) -> Result<(u64, FlowAssignment), SolveError> {
    solve(graph, tree, s, t, false).map(|(v, f, _)| (v, f))
}

/// As [`max_flow_decomposed`], also returning the working network after
/// every replacement and every reconstruction pop.
pub fn max_flow_decomposed_traced(
    graph: &FlowNetwork,
    tree: &DecompositionTree,
    s: VertexId,
    t: VertexId,
) -> Result<(u64, FlowAssignment, SolveTrace), SolveError> {
    let (v, f, trace) = solve(graph, tree, s, t, true)?;
    Ok((v, f, trace.expect("tracing was enabled")))
}

/// Decomposes `graph` for its minor-closed family, then solves.
pub fn max_flow_family(
    graph: &FlowNetwork,
    family: MinorFamily,
    s: VertexId,
    t: VertexId,
) -> Result<(u64, FlowAssignment), SolveError> {
    let tree = match family {
        MinorFamily::K33Free => decompose_k33_free(graph)?,
        MinorFamily::K5Free => decompose_k5_free(graph)?,
    };
    max_flow_decomposed(graph, &tree, s, t)
}
