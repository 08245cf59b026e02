use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use super::maxflow::{DenseNetwork, Dinic, MaxFlowBackend};
use super::{FlowError, FlowNetwork, VertexId};

/// Largest terminal count any construction here supports.
pub const MAX_TERMINALS: usize = 4;

/// An ordered list of distinct terminals, optionally with a designated source.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TerminalSet {
    terminals: Vec<VertexId>,
    source: Option<usize>,
}

impl TerminalSet {
    pub fn new(terminals: Vec<VertexId>) -> Result<Self, FlowError> {
        if terminals.is_empty() || terminals.len() > MAX_TERMINALS {
            return Err(FlowError::TerminalCount(terminals.len()));
        }
        let distinct: BTreeSet<_> = terminals.iter().collect();
        if distinct.len() != terminals.len() {
            return Err(FlowError::RepeatedTerminal);
        }
        Ok(Self {
            terminals,
            source: None,
        })
    }

    pub fn with_source(terminals: Vec<VertexId>, source: usize) -> Result<Self, FlowError> {
        let mut set = Self::new(terminals)?;
        if source >= set.terminals.len() {
            return Err(FlowError::SourceIndex(source));
        }
        set.source = Some(source);
        Ok(set)
    }

    pub fn len(&self) -> usize {
        self.terminals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terminals.is_empty()
    }

    pub fn get(&self, i: usize) -> VertexId {
        self.terminals[i]
    }

    pub fn as_slice(&self) -> &[VertexId] {
        &self.terminals
    }

    pub fn source_index(&self) -> Option<usize> {
        self.source
    }

    pub fn source(&self) -> Option<VertexId> {
        self.source.map(|i| self.terminals[i])
    }

    /// Bitmask with one bit per terminal.
    pub fn all_mask(&self) -> u32 {
        (1u32 << self.len()) - 1
    }

    /// Mask of every terminal except the source (all terminals if none).
    pub fn sink_mask(&self) -> u32 {
        match self.source {
            Some(i) => self.all_mask() & !(1 << i),
            None => self.all_mask(),
        }
    }

    pub fn subset(&self, mask: u32) -> Vec<VertexId> {
        (0..self.len())
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| self.terminals[i])
            .collect()
    }

    pub fn require_in(&self, net: &FlowNetwork) -> Result<(), FlowError> {
        self.terminals.iter().try_for_each(|&q| net.require_vertex(q))
    }
}

/// Which family of minimum cuts a table records.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CutMode {
    /// `S -/-> Q\S` for every nonempty proper subset `S` (keyed by `S`).
    Full,
    /// `s -/-> B` for every nonempty `B` avoiding the source (keyed by `B`),
    /// with the remaining terminals left free.
    SingleSource,
}

impl fmt::Display for CutMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CutMode::Full => write!(f, "full"),
            CutMode::SingleSource => write!(f, "single-source"),
        }
    }
}

/// Exact minimum cut values between terminal groups, keyed by bitmask over
/// the terminal order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CutTable {
    terminals: TerminalSet,
    mode: CutMode,
    values: BTreeMap<u32, u64>,
}

impl CutTable {
    pub fn new(terminals: TerminalSet, mode: CutMode) -> Result<Self, FlowError> {
        if mode == CutMode::SingleSource && terminals.source().is_none() {
            return Err(FlowError::MissingSource);
        }
        Ok(Self {
            terminals,
            mode,
            values: BTreeMap::new(),
        })
    }

    pub fn terminals(&self) -> &TerminalSet {
        &self.terminals
    }

    pub fn mode(&self) -> CutMode {
        self.mode
    }

    pub fn insert(&mut self, mask: u32, value: u64) {
        self.values.insert(mask, value);
    }

    pub fn get(&self, mask: u32) -> Option<u64> {
        self.values.get(&mask).copied()
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn entries(&self) -> impl Iterator<Item = (u32, u64)> + '_ {
        self.values.iter().map(|(&k, &v)| (k, v))
    }

    /// Every key a complete table of this mode must hold.
    pub fn expected_keys(&self) -> Vec<u32> {
        match self.mode {
            CutMode::Full => (1..self.terminals.all_mask()).collect(),
            CutMode::SingleSource => {
                let sinks = self.terminals.sink_mask();
                (1..=sinks).filter(|m| m & !sinks == 0).collect()
            }
        }
    }

    pub fn is_complete(&self) -> bool {
        self.expected_keys().iter().all(|k| self.values.contains_key(k))
    }

    /// Human-readable form of one entry, e.g. `{1,2} -/-> {3}`.
    pub fn describe(&self, mask: u32) -> String {
        let fmt_set = |m: u32| {
            let names: Vec<String> = self
                .terminals
                .subset(m)
                .iter()
                .map(|v| v.to_string())
                .collect();
            format!("{{{}}}", names.join(","))
        };
        match self.mode {
            CutMode::Full => format!(
                "{} -/-> {}",
                fmt_set(mask),
                fmt_set(self.terminals.all_mask() & !mask)
            ),
            CutMode::SingleSource => format!(
                "{} -/-> {}",
                self.terminals.source().map_or("?".into(), |s| s.to_string()),
                fmt_set(mask)
            ),
        }
    }
}

fn effectively_infinite(net: &FlowNetwork) -> u64 {
    net.total_capacity().saturating_add(1)
}

/// Minimum cut with all of `sources` on the source side and all of `sinks` on
/// the sink side, plus the inclusion-minimal source side achieving it.
pub fn min_cut(
    net: &FlowNetwork,
    sources: &[VertexId],
    sinks: &[VertexId],
) -> Result<(u64, BTreeSet<VertexId>), FlowError> {
    if sources.is_empty() || sinks.is_empty() {
        return Err(FlowError::EmptyCutSide);
    }
    if let Some(&v) = sources.iter().find(|v| sinks.contains(v)) {
        return Err(FlowError::OverlappingCutSides(v));
    }
    let inf = effectively_infinite(net);
    let mut dense = DenseNetwork::new(net);
    let sigma = dense.graph.add_node();
    let tau = dense.graph.add_node();
    for &v in sources {
        let i = dense.node(v)?;
        dense.graph.add_arc(sigma, i, inf);
    }
    for &v in sinks {
        let i = dense.node(v)?;
        dense.graph.add_arc(i, tau, inf);
    }
    let value = Dinic.augment(&mut dense.graph, sigma, tau);
    let reach = dense.graph.reachable_from(sigma);
    Ok((value, dense.side(&reach)))
}

/// `S -/-> T`: the minimum cut value separating the two vertex sets.
pub fn min_cut_value(
    net: &FlowNetwork,
    sources: &[VertexId],
    sinks: &[VertexId],
) -> Result<u64, FlowError> {
    min_cut(net, sources, sinks).map(|(value, _)| value)
}

/// Computes the full table (`2^k - 2` entries) or the single-source table
/// (`2^(k-1) - 1` entries) for `2 <= k <= 4` terminals.
pub fn cut_table(
    net: &FlowNetwork,
    terminals: &TerminalSet,
    mode: CutMode,
) -> Result<CutTable, FlowError> {
    if terminals.len() < 2 {
        return Err(FlowError::TerminalCount(terminals.len()));
    }
    terminals.require_in(net)?;
    let mut table = CutTable::new(terminals.clone(), mode)?;
    for mask in table.expected_keys() {
        let value = match mode {
            CutMode::Full => min_cut_value(
                net,
                &terminals.subset(mask),
                &terminals.subset(terminals.all_mask() & !mask),
            )?,
            CutMode::SingleSource => {
                let s = terminals.source().ok_or(FlowError::MissingSource)?;
                min_cut_value(net, &[s], &terminals.subset(mask))?
            }
        };
        table.insert(mask, value);
    }
    Ok(table)
}
