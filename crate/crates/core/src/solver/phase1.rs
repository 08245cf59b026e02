use std::collections::{BTreeMap, VecDeque};

use crate::decomp::{CliqueId, ComponentId, Label};
use crate::flow::FlowNetwork;
use crate::mimic::{build_small_mimic, merge_mimics};

use super::state::{Phase, SolveState, StepKind};
use super::{SolveError, TerminalPath};

/// Parent clique and the neighbour a mimic is glued toward, per off-path
/// component, plus the processing order (deepest first, then lowest id).
fn schedule(
    state: &SolveState,
    path: &TerminalPath,
) -> (Vec<ComponentId>, BTreeMap<ComponentId, (CliqueId, ComponentId)>) {
    let tree = &state.tree;
    let next_on_path: BTreeMap<CliqueId, ComponentId> = path
        .cliques
        .iter()
        .zip(&path.components[1..])
        .map(|(&k, &c)| (k, c))
        .collect();
    let mut depth: BTreeMap<ComponentId, usize> =
        path.components.iter().map(|&c| (c, 0)).collect();
    let mut parent = BTreeMap::new();
    let mut queue: VecDeque<ComponentId> = path.components.iter().copied().collect();
    while let Some(c) = queue.pop_front() {
        let d = depth[&c];
        for k in tree.cliques_of(c) {
            let owner = next_on_path.get(&k).copied().unwrap_or(c);
            for x in tree.components_of(k) {
                if !depth.contains_key(&x) {
                    depth.insert(x, d + 1);
                    parent.insert(x, (k, owner));
                    queue.push_back(x);
                }
            }
        }
    }
    let mut order: Vec<ComponentId> = parent.keys().copied().collect();
    order.sort_by_key(|c| (std::cmp::Reverse(depth[c]), *c));
    (order, parent)
}

fn glue(state: &mut SolveState, into: ComponentId, mimic: &FlowNetwork) -> Result<(), SolveError> {
    let node = state
        .tree
        .component_mut(into)
        .ok_or_else(|| SolveError::Internal(format!("glue target {into} missing")))?;
    node.network.absorb(mimic)?;
    Ok(())
}

fn drop_if_dangling(state: &mut SolveState, k: CliqueId) {
    if state.tree.components_of(k).len() <= 1 {
        state.tree.remove_clique(k);
    }
}

/// Replaces every component off the s-t path by a mimic on the clique
/// toward the path, deepest first.
///
/// A mimic is glued into its neighbour when it has at most two terminals,
/// when the neighbour is bounded-treewidth, or when the triangle is not
/// shared. Otherwise it waits on the triangle as a pendant; a second mimic
/// arriving there is merged with it, and the merge is glued in once the
/// triangle is exclusive.
pub fn phase1(state: &mut SolveState, path: &TerminalPath) -> Result<(), SolveError> {
    let (order, parent) = schedule(state, path);
    for c in order {
        let (k, cj) = parent[&c];
        let children: Vec<CliqueId> = state
            .tree
            .cliques_of(c)
            .into_iter()
            .filter(|&k2| k2 != k)
            .collect();
        let node = state
            .tree
            .remove_component(c)
            .ok_or_else(|| SolveError::Internal(format!("component {c} vanished")))?;
        let mut snapshot = node.network;
        // Anything still hanging below `c` is a parked pendant; fold it in.
        for k2 in children {
            for d in state.tree.components_of(k2) {
                if !state.pendants.remove(&d) {
                    return Err(SolveError::Internal(format!(
                        "component {d} below {c} was not replaced first"
                    )));
                }
                let p = state.tree.remove_component(d).expect("listed component");
                snapshot.absorb(&p.network)?;
            }
            state.tree.remove_clique(k2);
        }
        let terminals = state.tree.clique(k).expect("parent clique").vertices.clone();
        let mimic = build_small_mimic(&snapshot, &terminals, &mut state.ids)?;
        let rec = state.push_record(
            Phase::I,
            snapshot,
            terminals.clone(),
            None,
            &mimic,
            Some(k),
            Some(cj),
        );
        let shared = state.tree.components_of(k).iter().any(|&d| d != cj);
        let cj_label = state
            .tree
            .component(cj)
            .map(|n| n.label)
            .ok_or_else(|| SolveError::Internal(format!("neighbour {cj} missing")))?;
        if terminals.len() <= 2 || cj_label == Label::BoundedTW || !shared {
            glue(state, cj, &mimic)?;
            drop_if_dangling(state, k);
            state.record_step(StepKind::Replaced(rec))?;
            continue;
        }
        let existing = state
            .tree
            .components_of(k)
            .into_iter()
            .find(|d| state.pendants.contains(d));
        let fresh = state.tree.add_component(mimic.clone(), Label::Planar);
        state.tree.link(fresh, k);
        state.pendants.insert(fresh);
        state.record_step(StepKind::Replaced(rec))?;
        if let Some(p) = existing {
            let a = state.tree.remove_component(p).expect("pendant").network;
            let b = state.tree.remove_component(fresh).expect("pendant").network;
            state.pendants.remove(&p);
            state.pendants.remove(&fresh);
            let merged = merge_mimics(&a, &b, &terminals, &mut state.ids)?;
            let union = FlowNetwork::union(&a, &b)?;
            let rec2 = state.push_record(
                Phase::I,
                union,
                terminals.clone(),
                None,
                &merged,
                Some(k),
                Some(cj),
            );
            if state.tree.components_of(k) == [cj] {
                glue(state, cj, &merged)?;
                state.tree.remove_clique(k);
            } else {
                let m = state.tree.add_component(merged, Label::Planar);
                state.tree.link(m, k);
                state.pendants.insert(m);
            }
            state.record_step(StepKind::Replaced(rec2))?;
        }
    }
    Ok(())
}

