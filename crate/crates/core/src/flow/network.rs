use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use super::FlowError;

/// Global vertex identifier. Stable across every subnetwork of one instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub u32);

/// Global edge identifier. Stable across decomposition and reconstruction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeId(pub u32);

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Edge {
    pub id: EdgeId,
    pub tail: VertexId,
    pub head: VertexId,
    pub capacity: u64,
}

/// A directed multigraph with nonnegative integer capacities.
///
/// Parallel edges and antiparallel pairs are allowed; self-loops are not.
/// Edges are kept ordered by id so every traversal is deterministic.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FlowNetwork {
    vertices: BTreeSet<VertexId>,
    edges: BTreeMap<EdgeId, Edge>,
}

impl FlowNetwork {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds a network from `(tail, head, capacity)` triples, numbering edges
    /// from zero in the given order.
    pub fn from_arcs(arcs: &[(u32, u32, u64)]) -> Result<Self, FlowError> {
        let mut net = Self::new();
        for (i, &(u, v, c)) in arcs.iter().enumerate() {
            net.add_edge(EdgeId(i as u32), VertexId(u), VertexId(v), c)?;
        }
        Ok(net)
    }

    pub fn add_vertex(&mut self, v: VertexId) {
        self.vertices.insert(v);
    }

    /// Inserts an edge, adding its endpoints as vertices.
    pub fn add_edge(
        &mut self,
        id: EdgeId,
        tail: VertexId,
        head: VertexId,
        capacity: u64,
    ) -> Result<(), FlowError> {
        if tail == head {
            return Err(FlowError::SelfLoop(tail));
        }
        if self.edges.contains_key(&id) {
            return Err(FlowError::DuplicateEdge(id));
        }
        self.vertices.insert(tail);
        self.vertices.insert(head);
        self.edges.insert(
            id,
            Edge {
                id,
                tail,
                head,
                capacity,
            },
        );
        Ok(())
    }

    pub fn insert(&mut self, edge: Edge) -> Result<(), FlowError> {
        self.add_edge(edge.id, edge.tail, edge.head, edge.capacity)
    }

    pub fn remove_edge(&mut self, id: EdgeId) -> Option<Edge> {
        self.edges.remove(&id)
    }

    /// Removes a vertex that has no incident edges left.
    pub fn remove_isolated_vertex(&mut self, v: VertexId) -> bool {
        if self.edges.values().any(|e| e.tail == v || e.head == v) {
            return false;
        }
        self.vertices.remove(&v)
    }

    pub fn set_capacity(&mut self, id: EdgeId, capacity: u64) -> Result<(), FlowError> {
        let e = self.edges.get_mut(&id).ok_or(FlowError::UnknownEdge(id))?;
        e.capacity = capacity;
        Ok(())
    }

    pub fn contains_vertex(&self, v: VertexId) -> bool {
        self.vertices.contains(&v)
    }

    pub fn contains_edge(&self, id: EdgeId) -> bool {
        self.edges.contains_key(&id)
    }

    pub fn edge(&self, id: EdgeId) -> Option<&Edge> {
        self.edges.get(&id)
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.vertices.iter().copied()
    }

    pub fn vertex_set(&self) -> &BTreeSet<VertexId> {
        &self.vertices
    }

    pub fn edges(&self) -> impl Iterator<Item = &Edge> + '_ {
        self.edges.values()
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn total_capacity(&self) -> u64 {
        self.edges
            .values()
            .fold(0u64, |acc, e| acc.saturating_add(e.capacity))
    }

    pub fn max_vertex_id(&self) -> Option<VertexId> {
        self.vertices.iter().next_back().copied()
    }

    pub fn max_edge_id(&self) -> Option<EdgeId> {
        self.edges.keys().next_back().copied()
    }

    pub fn require_vertex(&self, v: VertexId) -> Result<(), FlowError> {
        if self.contains_vertex(v) {
            Ok(())
        } else {
            Err(FlowError::UnknownVertex(v))
        }
    }

    /// Adds every vertex and edge of `other`. Edge ids must not collide.
    pub fn absorb(&mut self, other: &FlowNetwork) -> Result<(), FlowError> {
        for &v in &other.vertices {
            self.vertices.insert(v);
        }
        for e in other.edges.values() {
            self.insert(*e)?;
        }
        Ok(())
    }

    pub fn union(a: &FlowNetwork, b: &FlowNetwork) -> Result<FlowNetwork, FlowError> {
        let mut out = a.clone();
        out.absorb(b)?;
        Ok(out)
    }

    /// Sum of capacities over edges from `side` to its complement.
    pub fn cut_capacity(&self, side: &BTreeSet<VertexId>) -> u64 {
        self.edges
            .values()
            .filter(|e| side.contains(&e.tail) && !side.contains(&e.head))
            .map(|e| e.capacity)
            .sum()
    }
}

/// Allocator for vertex and edge ids that are guaranteed fresh with respect
/// to everything allocated before.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FreshIds {
    next_vertex: u32,
    next_edge: u32,
}

impl FreshIds {
    pub fn new(next_vertex: u32, next_edge: u32) -> Self {
        Self {
            next_vertex,
            next_edge,
        }
    }

    /// Ids strictly above everything used by `net`.
    pub fn after(net: &FlowNetwork) -> Self {
        Self {
            next_vertex: net.max_vertex_id().map_or(0, |v| v.0 + 1),
            next_edge: net.max_edge_id().map_or(0, |e| e.0 + 1),
        }
    }

    pub fn vertex(&mut self) -> VertexId {
        let v = VertexId(self.next_vertex);
        self.next_vertex += 1;
        v
    }

    pub fn edge(&mut self) -> EdgeId {
        let e = EdgeId(self.next_edge);
        self.next_edge += 1;
        e
    }

    /// Raises the counters so they also clear the ids used by `net`.
    pub fn reserve(&mut self, net: &FlowNetwork) {
        let other = Self::after(net);
        self.next_vertex = self.next_vertex.max(other.next_vertex);
        self.next_edge = self.next_edge.max(other.next_edge);
    }
}
