//! Reference answers computed without touching the production flow engine.

use std::collections::BTreeMap;

use crate::flow::{CutMode, CutTable, FlowNetwork, TerminalSet, VertexId};

use super::TestkitError;

/// Largest network the bipartition enumeration accepts.
pub const ENUMERATION_LIMIT: usize = 20;

/// Maximum flow value by plain depth-first augmenting paths over an
/// aggregated residual map (parallel edges merged, no layering).
pub fn oracle_max_flow(net: &FlowNetwork, s: VertexId, t: VertexId) -> u64 {
    if s == t || !net.contains_vertex(s) || !net.contains_vertex(t) {
        return 0;
    }
    let mut residual: BTreeMap<VertexId, BTreeMap<VertexId, u64>> = BTreeMap::new();
    for e in net.edges() {
        *residual.entry(e.tail).or_default().entry(e.head).or_default() += e.capacity;
        residual.entry(e.head).or_default().entry(e.tail).or_default();
    }
    let mut total = 0u64;
    loop {
        // Iterative DFS recording the parent of each discovered vertex.
        let mut parent: BTreeMap<VertexId, VertexId> = BTreeMap::new();
        let mut stack = vec![s];
        let mut found = false;
        while let Some(u) = stack.pop() {
            if u == t {
                found = true;
                break;
            }
            if let Some(out) = residual.get(&u) {
                for (&w, &c) in out {
                    if c > 0 && w != s && !parent.contains_key(&w) {
                        parent.insert(w, u);
                        stack.push(w);
                    }
                }
            }
        }
        if !found {
            return total;
        }
        let mut path = Vec::new();
        let mut w = t;
        while w != s {
            let u = parent[&w];
            path.push((u, w));
            w = u;
        }
        let bottleneck = path
            .iter()
            .map(|(u, w)| residual[u][w])
            .min()
            .unwrap_or(0);
        for (u, w) in path {
            *residual.get_mut(&u).unwrap().get_mut(&w).unwrap() -= bottleneck;
            *residual.get_mut(&w).unwrap().get_mut(&u).unwrap() += bottleneck;
        }
        total += bottleneck;
    }
}

/// Capacity of every source-side vertex mask of a small network, indexed by
/// the mask over the sorted vertex list.
fn all_cut_capacities(net: &FlowNetwork) -> Result<(Vec<VertexId>, Vec<u64>), TestkitError> {
    let vs: Vec<VertexId> = net.vertices().collect();
    if vs.len() > ENUMERATION_LIMIT {
        return Err(TestkitError::TooLarge {
            size: vs.len(),
            limit: ENUMERATION_LIMIT,
        });
    }
    let index: BTreeMap<VertexId, usize> = vs.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let arcs: Vec<(usize, usize, u64)> = net
        .edges()
        .map(|e| (index[&e.tail], index[&e.head], e.capacity))
        .collect();
    let caps = (0u32..1 << vs.len())
        .map(|mask| {
            arcs.iter()
                .filter(|&&(u, w, _)| mask >> u & 1 == 1 && mask >> w & 1 == 0)
                .map(|&(_, _, c)| c)
                .sum()
        })
        .collect();
    Ok((vs, caps))
}

/// Minimum cut between two vertex groups by exhaustive enumeration.
pub fn oracle_min_cut(
    net: &FlowNetwork,
    sources: &[VertexId],
    sinks: &[VertexId],
) -> Result<u64, TestkitError> {
    let (vs, caps) = all_cut_capacities(net)?;
    let mask_of = |set: &[VertexId]| -> u32 {
        set.iter()
            .map(|v| vs.iter().position(|w| w == v).map_or(0, |i| 1u32 << i))
            .fold(0, |a, b| a | b)
    };
    let (src, snk) = (mask_of(sources), mask_of(sinks));
    Ok(caps
        .iter()
        .enumerate()
        .filter(|&(m, _)| m as u32 & src == src && m as u32 & snk == 0)
        .map(|(_, &c)| c)
        .min()
        .unwrap_or(0))
}

/// Exact cut table by enumerating all `2^|V|` vertex bipartitions.
pub fn oracle_cut_table(
    net: &FlowNetwork,
    terminals: &TerminalSet,
    mode: CutMode,
) -> Result<CutTable, TestkitError> {
    let (vs, caps) = all_cut_capacities(net)?;
    let positions: Vec<usize> = terminals
        .as_slice()
        .iter()
        .map(|q| {
            vs.iter()
                .position(|v| v == q)
                .ok_or(TestkitError::UnknownTerminal(*q))
        })
        .collect::<Result<_, _>>()?;
    // Terminal mask of the terminals lying on the source side of `mask`.
    let terminal_side = |mask: usize| -> u32 {
        positions
            .iter()
            .enumerate()
            .filter(|&(_, &p)| mask >> p & 1 == 1)
            .map(|(i, _)| 1u32 << i)
            .fold(0, |a, b| a | b)
    };
    let mut table = CutTable::new(terminals.clone(), mode)?;
    let mut best: BTreeMap<u32, u64> = BTreeMap::new();
    match mode {
        CutMode::Full => {
            for (mask, &c) in caps.iter().enumerate() {
                let side = terminal_side(mask);
                let e = best.entry(side).or_insert(u64::MAX);
                *e = (*e).min(c);
            }
        }
        CutMode::SingleSource => {
            let s = terminals.source_index().expect("checked by CutTable::new");
            let sinks = terminals.sink_mask();
            for (mask, &c) in caps.iter().enumerate() {
                let side = terminal_side(mask);
                if side >> s & 1 == 0 {
                    continue;
                }
                // Every sink group disjoint from the source side is separated.
                let free = sinks & !side;
                let mut b = free;
                while b > 0 {
                    let e = best.entry(b).or_insert(u64::MAX);
                    *e = (*e).min(c);
                    b = (b - 1) & free;
                }
            }
        }
    }
    for key in table.expected_keys() {
        table.insert(key, best.get(&key).copied().unwrap_or(0));
    }
    Ok(table)
}
