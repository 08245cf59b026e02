use std::collections::{BTreeMap, BTreeSet, VecDeque};

use super::{EdgeId, FlowAssignment, FlowError, FlowNetwork, VertexId};

/// Dense residual graph. Arc `a` and its reverse `a ^ 1` are stored in pairs.
#[derive(Debug, Clone, Default)]
pub struct ResidualGraph {
    adj: Vec<Vec<usize>>,
    to: Vec<usize>,
    cap: Vec<u64>,
    initial: Vec<u64>,
}

impl ResidualGraph {
    pub fn new(nodes: usize) -> Self {
        Self {
            adj: vec![Vec::new(); nodes],
            ..Self::default()
        }
    }

    pub fn num_nodes(&self) -> usize {
        self.adj.len()
    }

    pub fn add_node(&mut self) -> usize {
        self.adj.push(Vec::new());
        self.adj.len() - 1
    }

    /// Adds arc `u -> v` and returns its index.
    pub fn add_arc(&mut self, u: usize, v: usize, capacity: u64) -> usize {
        let a = self.to.len();
        self.adj[u].push(a);
        self.to.push(v);
        self.cap.push(capacity);
        self.initial.push(capacity);
        self.adj[v].push(a + 1);
        self.to.push(u);
        self.cap.push(0);
        self.initial.push(0);
        a
    }

    /// Flow currently routed along forward arc `a`.
    pub fn flow(&self, a: usize) -> u64 {
        self.initial[a] - self.cap[a]
    }

    pub fn residual(&self, a: usize) -> u64 {
        self.cap[a]
    }

    fn push(&mut self, a: usize, amount: u64) {
        self.cap[a] -= amount;
        self.cap[a ^ 1] += amount;
    }

    /// Nodes reachable from `s` through arcs with positive residual capacity.
    pub fn reachable_from(&self, s: usize) -> Vec<bool> {
        let mut seen = vec![false; self.num_nodes()];
        let mut queue = VecDeque::from([s]);
        seen[s] = true;
        while let Some(u) = queue.pop_front() {
            for &a in &self.adj[u] {
                let v = self.to[a];
                if self.cap[a] > 0 && !seen[v] {
                    seen[v] = true;
                    queue.push_back(v);
                }
            }
        }
        seen
    }
}

/// Strategy for saturating a residual graph. Specialised planar or
/// treewidth-based solvers can be plugged in behind this trait.
pub trait MaxFlowBackend {
    /// Pushes a maximum flow from `s` to `t` and returns the amount added.
    fn augment(&self, graph: &mut ResidualGraph, s: usize, t: usize) -> u64;
}

/// Shortest augmenting paths over BFS layers, with blocking flows found by an
/// iterative DFS that keeps a current-arc pointer per node.
#[derive(Debug, Clone, Copy, Default)]
pub struct Dinic;

impl Dinic {
    fn levels(g: &ResidualGraph, s: usize, t: usize, level: &mut [usize]) -> bool {
        level.fill(usize::MAX);
        level[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &a in &g.adj[u] {
                let v = g.to[a];
                if g.cap[a] > 0 && level[v] == usize::MAX {
                    level[v] = level[u] + 1;
                    queue.push_back(v);
                }
            }
        }
        level[t] != usize::MAX
    }

    fn blocking_flow(
        g: &mut ResidualGraph,
        s: usize,
        t: usize,
        level: &mut [usize],
        next: &mut [usize],
    ) -> u64 {
        let mut total = 0u64;
        let mut path: Vec<usize> = Vec::new();
        let mut u = s;
        loop {
            if u == t {
                let bottleneck = path.iter().map(|&a| g.cap[a]).min().unwrap_or(0);
                for &a in &path {
                    g.push(a, bottleneck);
                }
                total += bottleneck;
                path.clear();
                u = s;
                continue;
            }
            let mut advanced = false;
            while next[u] < g.adj[u].len() {
                let a = g.adj[u][next[u]];
                let v = g.to[a];
                if g.cap[a] > 0 && level[v] == level[u].wrapping_add(1) {
                    path.push(a);
                    u = v;
                    advanced = true;
                    break;
                }
                next[u] += 1;
            }
            if advanced {
                continue;
            }
            // Dead end: prune u from the layered graph and retreat.
            level[u] = usize::MAX;
            match path.pop() {
                Some(a) => {
                    u = g.to[a ^ 1];
                    next[u] += 1;
                }
                None => return total,
            }
        }
    }
}

impl MaxFlowBackend for Dinic {
    fn augment(&self, g: &mut ResidualGraph, s: usize, t: usize) -> u64 {
        if s == t {
            return 0;
        }
        let n = g.num_nodes();
        let mut level = vec![usize::MAX; n];
        let mut next = vec![0usize; n];
        let mut total = 0u64;
        while Self::levels(g, s, t, &mut level) {
            next.fill(0);
            total += Self::blocking_flow(g, s, t, &mut level, &mut next);
        }
        total
    }
}

/// A network laid out densely for the residual engine, remembering which arc
/// carries each original edge.
pub(crate) struct DenseNetwork {
    pub graph: ResidualGraph,
    pub index: BTreeMap<VertexId, usize>,
    pub ids: Vec<VertexId>,
    pub arcs: Vec<(EdgeId, usize)>,
}

impl DenseNetwork {
    pub fn new(net: &FlowNetwork) -> Self {
        let ids: Vec<VertexId> = net.vertices().collect();
        let index: BTreeMap<VertexId, usize> =
            ids.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut graph = ResidualGraph::new(ids.len());
        let arcs = net
            .edges()
            .map(|e| (e.id, graph.add_arc(index[&e.tail], index[&e.head], e.capacity)))
            .collect();
        Self {
            graph,
            index,
            ids,
            arcs,
        }
    }

    pub fn node(&self, v: VertexId) -> Result<usize, FlowError> {
        self.index.get(&v).copied().ok_or(FlowError::UnknownVertex(v))
    }

    pub fn assignment(&self) -> FlowAssignment {
        self.arcs
            .iter()
            .map(|&(id, a)| (id, self.graph.flow(a)))
            .collect()
    }

    pub fn side(&self, reach: &[bool]) -> BTreeSet<VertexId> {
        self.ids
            .iter()
            .enumerate()
            .filter(|&(i, _)| reach[i])
            .map(|(_, &v)| v)
            .collect()
    }
}

/// Result of a maximum s–t flow computation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaxFlow {
    pub value: u64,
    pub flow: FlowAssignment,
    /// Source side of the minimum cut closest to the source.
    pub source_side: BTreeSet<VertexId>,
}

pub fn max_flow(net: &FlowNetwork, s: VertexId, t: VertexId) -> Result<MaxFlow, FlowError> {
    max_flow_with(&Dinic, net, s, t)
}

pub fn max_flow_with<B: MaxFlowBackend + ?Sized>(
    backend: &B,
    net: &FlowNetwork,
    s: VertexId,
    t: VertexId,
) -> Result<MaxFlow, FlowError> {
    if s == t {
        return Err(FlowError::SameSourceSink(s));
    }
    let mut dense = DenseNetwork::new(net);
    let (si, ti) = (dense.node(s)?, dense.node(t)?);
    let value = backend.augment(&mut dense.graph, si, ti);
    let reach = dense.graph.reachable_from(si);
    Ok(MaxFlow {
        value,
        flow: dense.assignment(),
        source_side: dense.side(&reach),
    })
}
