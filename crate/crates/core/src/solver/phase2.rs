use crate::decomp::{ComponentId, Label};
use crate::flow::{cut_table, min_cut_value, CutMode, FlowNetwork, FreshIds, TerminalSet, VertexId};
use crate::mimic::{
    build_mimic4_single_source, build_mimic_general, build_small_mimic, Mimic4SSSpec,
};

use super::state::{Phase, SolveState, StepKind};
use super::{SolveError, TerminalPath};

/// Added edges charged to a planar component per glued single-source mimic.
const MIMIC4_EDGES: u32 = 7;

/// A network on `terminals` (source first) that carries every s-t flow the
/// replaced side can.
///
/// One exit terminal gets the edge `s -> u`; two get the full star, since
/// flow may leave and re-enter through the pair. Three get the single-source
/// mimic when its full cut table agrees with the side's, and the signature
/// collapse mimic otherwise.
fn source_side_mimic(
    net: &FlowNetwork,
    terminals: &[VertexId],
    ids: &mut FreshIds,
) -> Result<FlowNetwork, SolveError> {
    let s = terminals[0];
    match terminals.len() {
        1 => {
            let mut out = FlowNetwork::new();
            out.add_vertex(s);
            Ok(out)
        }
        2 => {
            let u = terminals[1];
            let cap = min_cut_value(net, &[s], &[u])?;
            let mut out = FlowNetwork::new();
            out.add_edge(ids.edge(), s, u, cap)?;
            Ok(out)
        }
        3 => Ok(build_small_mimic(net, terminals, ids)?),
        _ => {
            let single = TerminalSet::with_source(terminals.to_vec(), 0)?;
            let full = TerminalSet::new(terminals.to_vec())?;
            let table = cut_table(net, &single, CutMode::SingleSource)?;
            let mut trial = *ids;
            let candidate = Mimic4SSSpec::from_table(&table)
                .and_then(|spec| build_mimic4_single_source(&spec, &mut trial));
            if let Ok((m, _)) = candidate {
                if cut_table(&m, &full, CutMode::Full)? == cut_table(net, &full, CutMode::Full)? {
                    *ids = trial;
                    return Ok(m);
                }
            }
            Ok(build_mimic_general(net, &full, ids)?)
        }
    }
}

fn relabel(label: Label) -> Label {
    match label {
        Label::Planar => Label::PlanarPlusK(MIMIC4_EDGES),
        Label::PlanarPlusK(k) => Label::PlanarPlusK(k + MIMIC4_EDGES),
        Label::BoundedTW => Label::BoundedTW,
    }
}

/// Folds the path components into one, from s's end toward t's, and
/// returns the final network holding both terminals.
pub fn phase2(
    state: &mut SolveState,
    path: &TerminalPath,
    s: VertexId,
    t: VertexId,
) -> Result<FlowNetwork, SolveError> {
    for (i, &k) in path.cliques.iter().enumerate() {
        let (c, next) = (path.components[i], path.components[i + 1]);
        let own_cliques = state.tree.cliques_of(c);
        let node = state
            .tree
            .remove_component(c)
            .ok_or_else(|| SolveError::Internal(format!("path component {c} missing")))?;
        for k2 in own_cliques {
            if k2 != k && state.tree.components_of(k2).is_empty() {
                state.tree.remove_clique(k2);
            }
        }
        let clique = state.tree.clique(k).expect("path clique").vertices.clone();
        let mut terminals = vec![s];
        terminals.extend(clique.iter().copied().filter(|&v| v != s));
        if !node.network.contains_vertex(s) {
            return Err(SolveError::Internal(format!("source missing from {c}")));
        }
        let mimic = source_side_mimic(&node.network, &terminals, &mut state.ids)?;
        let rec = state.push_record(
            Phase::II,
            node.network,
            terminals,
            Some(s),
            &mimic,
            Some(k),
            Some(next),
        );
        let mut incoming = mimic;
        for d in state.tree.components_of(k) {
            if d == next {
                continue;
            }
            if !state.pendants.remove(&d) {
                return Err(SolveError::Internal(format!(
                    "component {d} on path clique {k} was not replaced"
                )));
            }
            let p = state.tree.remove_component(d).expect("listed component");
            incoming.absorb(&p.network)?;
        }
        let target = state
            .tree
            .component_mut(next)
            .ok_or_else(|| SolveError::Internal(format!("path component {next} missing")))?;
        target.network.absorb(&incoming)?;
        target.label = relabel(target.label);
        state.tree.remove_clique(k);
        state.record_step(StepKind::Replaced(rec))?;
    }
    let last: ComponentId = path.sink_component();
    if state.tree.num_components() != 1 {
        return Err(SolveError::Internal(format!(
            "{} components left after folding the path",
            state.tree.num_components()
        )));
    }
    let net = state
        .tree
        .component(last)
        .map(|n| n.network.clone())
        .ok_or_else(|| SolveError::Internal(format!("final component {last} missing")))?;
    if !net.contains_vertex(t) {
        return Err(SolveError::Internal("sink missing from final network".into()));
    }
    Ok(net)
}
