use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::flow::{FlowNetwork, VertexId};

/// Undirected simple graph over global vertex ids.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SimpleGraph {
    adj: BTreeMap<VertexId, BTreeSet<VertexId>>,
    edges: usize,
}

impl SimpleGraph {
    pub fn new() -> Self {
        Self::default()
    }

    /// Underlying simple graph: directions, multiplicities and capacities
    /// are dropped.
    pub fn from_network(net: &FlowNetwork) -> Self {
        let mut g = Self::new();
        for v in net.vertices() {
            g.add_vertex(v);
        }
        for e in net.edges() {
            g.add_edge(e.tail, e.head);
        }
        g
    }

    pub fn from_edges(edges: &[(u32, u32)]) -> Self {
        let mut g = Self::new();
        for &(u, v) in edges {
            g.add_edge(VertexId(u), VertexId(v));
        }
        g
    }

    pub fn add_vertex(&mut self, v: VertexId) {
        self.adj.entry(v).or_default();
    }

    /// Adds `uv` unless it is a loop or already present. Returns whether the
    /// graph changed.
    pub fn add_edge(&mut self, u: VertexId, v: VertexId) -> bool {
        self.add_vertex(u);
        self.add_vertex(v);
        if u == v || self.adj[&u].contains(&v) {
            return false;
        }
        self.adj.get_mut(&u).unwrap().insert(v);
        self.adj.get_mut(&v).unwrap().insert(u);
        self.edges += 1;
        true
    }

    pub fn remove_edge(&mut self, u: VertexId, v: VertexId) -> bool {
        let removed = self.adj.get_mut(&u).is_some_and(|s| s.remove(&v));
        if removed {
            self.adj.get_mut(&v).unwrap().remove(&u);
            self.edges -= 1;
        }
        removed
    }

    pub fn remove_vertex(&mut self, v: VertexId) {
        if let Some(nbrs) = self.adj.remove(&v) {
            for w in &nbrs {
                self.adj.get_mut(w).unwrap().remove(&v);
            }
            self.edges -= nbrs.len();
        }
    }

    pub fn contains_vertex(&self, v: VertexId) -> bool {
        self.adj.contains_key(&v)
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.adj.get(&u).is_some_and(|s| s.contains(&v))
    }

    pub fn neighbors(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        self.adj.get(&v).into_iter().flatten().copied()
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adj.get(&v).map_or(0, |s| s.len())
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.adj.keys().copied()
    }

    pub fn vertex_set(&self) -> BTreeSet<VertexId> {
        self.adj.keys().copied().collect()
    }

    pub fn num_vertices(&self) -> usize {
        self.adj.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges
    }

    /// Every edge once as `(u, v)` with `u < v`, in sorted order.
    pub fn edges(&self) -> Vec<(VertexId, VertexId)> {
        self.adj
            .iter()
            .flat_map(|(&u, nbrs)| nbrs.range(u..).map(move |&v| (u, v)))
            .filter(|(u, v)| u != v)
            .collect()
    }

    pub fn induced(&self, keep: &BTreeSet<VertexId>) -> SimpleGraph {
        let mut g = SimpleGraph::new();
        for &v in keep {
            if self.contains_vertex(v) {
                g.add_vertex(v);
                for w in self.neighbors(v) {
                    if keep.contains(&w) {
                        g.add_edge(v, w);
                    }
                }
            }
        }
        g
    }

    pub fn without(&self, drop: &[VertexId]) -> SimpleGraph {
        let mut g = self.clone();
        for &v in drop {
            g.remove_vertex(v);
        }
        g
    }

    /// Connected components, each as a vertex set, ordered by smallest vertex.
    pub fn components(&self) -> Vec<BTreeSet<VertexId>> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for start in self.vertices() {
            if !seen.insert(start) {
                continue;
            }
            let mut comp = BTreeSet::from([start]);
            let mut queue = VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                for w in self.neighbors(u) {
                    if seen.insert(w) {
                        comp.insert(w);
                        queue.push_back(w);
                    }
                }
            }
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simple_graph_drops_duplicates_and_loops() {
        let net = FlowNetwork::from_arcs(&[(0, 1, 1), (1, 0, 2), (0, 1, 3), (1, 2, 1)]).unwrap();
        let g = SimpleGraph::from_network(&net);
        assert_eq!(g.num_edges(), 2);
        let mut h = g.clone();
        assert!(!h.add_edge(VertexId(2), VertexId(2)));
        h.remove_vertex(VertexId(1));
        assert_eq!(h.num_edges(), 0);
        assert_eq!(h.components().len(), 2);
    }
}
