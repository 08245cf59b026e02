use std::collections::{BTreeMap, BTreeSet};

use crate::decomp::{CliqueId, ComponentId, DecompositionTree};
use crate::flow::{EdgeId, FlowAssignment, FlowError, FlowNetwork, FreshIds, VertexId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Phase {
    I,
    II,
}

/// Where a live edge of the working network came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Provenance {
    Original,
    /// Installed by the replacement record with this index.
    MimicOf(usize),
}

/// One replacement of a subnetwork by a mimicking network.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReplacementRecord {
    pub id: usize,
    pub phase: Phase,
    /// The replaced subnetwork, as it was at replacement time.
    pub snapshot: FlowNetwork,
    pub snapshot_provenance: Vec<(EdgeId, Provenance)>,
    pub terminals: Vec<VertexId>,
    /// Set for single-source replacements.
    pub source: Option<VertexId>,
    /// The mimicking network put in its place.
    pub installed: FlowNetwork,
    pub clique: Option<CliqueId>,
    pub neighbor: Option<ComponentId>,
}

impl ReplacementRecord {
    pub fn installed_edges(&self) -> Vec<EdgeId> {
        self.installed.edges().map(|e| e.id).collect()
    }

    /// Mimic vertices that are not terminals.
    pub fn installed_vertices(&self) -> Vec<VertexId> {
        self.installed
            .vertices()
            .filter(|v| !self.terminals.contains(v))
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StepKind {
    Initial,
    Replaced(usize),
    Restored(usize),
}

/// The working network after one step, and during reconstruction the flow
/// on it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceStep {
    pub kind: StepKind,
    pub network: FlowNetwork,
    pub flow: Option<FlowAssignment>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveTrace {
    pub source: VertexId,
    pub sink: VertexId,
    pub steps: Vec<TraceStep>,
}

/// Mutable state threaded through both phases and reconstruction.
#[derive(Debug, Clone)]
pub struct SolveState {
    pub tree: DecompositionTree,
    /// Replayed last-to-first by reconstruction.
    pub stack: Vec<ReplacementRecord>,
    pub provenance: BTreeMap<EdgeId, Provenance>,
    /// Mimics parked on a shared triangle instead of being glued in.
    pub pendants: BTreeSet<ComponentId>,
    pub ids: FreshIds,
    pub trace: Option<SolveTrace>,
}

impl SolveState {
    pub fn new(tree: DecompositionTree) -> Result<Self, FlowError> {
        let all = tree.reassemble()?;
        Ok(Self {
            provenance: all.edges().map(|e| (e.id, Provenance::Original)).collect(),
            ids: FreshIds::after(&all),
            tree,
            stack: Vec::new(),
            pendants: BTreeSet::new(),
            trace: None,
        })
    }

    /// Starts recording the working network after every step.
    pub fn enable_trace(&mut self, source: VertexId, sink: VertexId) -> Result<(), FlowError> {
        let network = self.tree.reassemble()?;
        self.trace = Some(SolveTrace {
            source,
            sink,
            steps: vec![TraceStep {
                kind: StepKind::Initial,
                network,
                flow: None,
            }],
        });
        Ok(())
    }

    pub fn working_network(&self) -> Result<FlowNetwork, FlowError> {
        self.tree.reassemble()
    }

    pub(crate) fn push_record(
        &mut self,
        phase: Phase,
        snapshot: FlowNetwork,
        terminals: Vec<VertexId>,
        source: Option<VertexId>,
        installed: &FlowNetwork,
        clique: Option<CliqueId>,
        neighbor: Option<ComponentId>,
    ) -> usize {
        let id = self.stack.len();
        let snapshot_provenance = snapshot
            .edges()
            .map(|e| {
                let p = self.provenance.remove(&e.id).unwrap_or(Provenance::Original);
                (e.id, p)
            })
            .collect();
        for e in installed.edges() {
            self.provenance.insert(e.id, Provenance::MimicOf(id));
        }
        self.stack.push(ReplacementRecord {
            id,
            phase,
            snapshot,
            snapshot_provenance,
            terminals,
            source,
            installed: installed.clone(),
            clique,
            neighbor,
        });
        id
    }

    pub(crate) fn record_step(&mut self, kind: StepKind) -> Result<(), FlowError> {
        if self.trace.is_some() {
            let network = self.tree.reassemble()?;
            self.push_step(kind, network, None);
        }
        Ok(())
    }

    pub(crate) fn push_step(
        &mut self,
        kind: StepKind,
        network: FlowNetwork,
        flow: Option<FlowAssignment>,
    ) {
        if let Some(trace) = &mut self.trace {
            trace.steps.push(TraceStep {
                kind,
                network,
                flow,
            });
        }
    }
}
