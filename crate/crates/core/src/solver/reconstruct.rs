use crate::flow::{route_external_flow, FlowAssignment, FlowNetwork};

use super::state::{Provenance, SolveState, StepKind};
use super::SolveError;

/// Pops every replacement, last first, turning a flow on the final network
/// into one on the original network.
///
/// Each pop reads the net outflow of the installed mimic at its terminals,
/// removes the mimic, and routes that external flow through the restored
/// snapshot.
pub fn reconstruct(
    state: &mut SolveState,
    final_network: &FlowNetwork,
    mut flow: FlowAssignment,
) -> Result<FlowAssignment, SolveError> {
    let mut current = state.trace.as_ref().map(|_| final_network.clone());
    while let Some(rec) = state.stack.pop() {
        let demand: Vec<i64> = rec
            .terminals
            .iter()
            .map(|&q| {
                rec.installed
                    .edges()
                    .map(|e| {
                        let f = flow.get(e.id) as i64;
                        (e.tail == q) as i64 * f - (e.head == q) as i64 * f
                    })
                    .sum()
            })
            .collect();
        for e in rec.installed.edges() {
            flow.remove(e.id);
            state.provenance.remove(&e.id);
        }
        let restored = route_external_flow(&rec.snapshot, &rec.terminals, &demand).map_err(
            |source| SolveError::ReconstructionFailed {
                record: rec.id,
                source,
            },
        )?;
        flow.extend(&restored);
        state.provenance.extend(rec.snapshot_provenance.iter().copied());
        if let Some(net) = current.as_mut() {
            for e in rec.installed.edges() {
                net.remove_edge(e.id);
            }
            for v in rec.installed_vertices() {
                net.remove_isolated_vertex(v);
            }
            net.absorb(&rec.snapshot)?;
            let snapshot = (net.clone(), flow.clone());
            state.push_step(StepKind::Restored(rec.id), snapshot.0, Some(snapshot.1));
        }
    }
    if let Some((e, _)) = state
        .provenance
        .iter()
        .find(|(_, p)| **p != Provenance::Original)
    {
        return Err(SolveError::Internal(format!("mimic edge {e} survived reconstruction")));
    }
    Ok(flow)
}
