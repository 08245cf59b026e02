use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use crate::flow::{FlowError, FlowNetwork, VertexId};

use super::planar::is_planar;
use super::SimpleGraph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ComponentId(pub u32);

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CliqueId(pub u32);

impl fmt::Display for ComponentId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "C{}", self.0)
    }
}

impl fmt::Display for CliqueId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "K{}", self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Label {
    Planar,
    /// Planar after deleting the given number of added edges.
    PlanarPlusK(u32),
    BoundedTW,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentNode {
    pub id: ComponentId,
    pub network: FlowNetwork,
    pub label: Label,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliqueNode {
    pub id: CliqueId,
    /// Sorted, at most three.
    pub vertices: Vec<VertexId>,
}

/// Two-coloured tree of components and the cliques they are glued along.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DecompositionTree {
    components: BTreeMap<ComponentId, ComponentNode>,
    cliques: BTreeMap<CliqueId, CliqueNode>,
    comp_links: BTreeMap<ComponentId, BTreeSet<CliqueId>>,
    clique_links: BTreeMap<CliqueId, BTreeSet<ComponentId>>,
    next_component: u32,
    next_clique: u32,
}

impl DecompositionTree {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn single(network: FlowNetwork, label: Label) -> Self {
        let mut t = Self::new();
        t.add_component(network, label);
        t
    }

    pub fn add_component(&mut self, network: FlowNetwork, label: Label) -> ComponentId {
        let id = ComponentId(self.next_component);
        self.insert_component(id, network, label);
        id
    }

    /// Inserts (or replaces) a component under a caller-chosen id.
    pub fn insert_component(&mut self, id: ComponentId, network: FlowNetwork, label: Label) {
        self.next_component = self.next_component.max(id.0 + 1);
        self.components
            .insert(id, ComponentNode { id, network, label });
        self.comp_links.entry(id).or_default();
    }

    pub fn add_clique(&mut self, vertices: Vec<VertexId>) -> CliqueId {
        let id = CliqueId(self.next_clique);
        self.insert_clique(id, vertices);
        id
    }

    pub fn insert_clique(&mut self, id: CliqueId, mut vertices: Vec<VertexId>) {
        vertices.sort();
        vertices.dedup();
        self.next_clique = self.next_clique.max(id.0 + 1);
        self.cliques.insert(id, CliqueNode { id, vertices });
        self.clique_links.entry(id).or_default();
    }

    pub fn link(&mut self, c: ComponentId, k: CliqueId) {
        self.comp_links.entry(c).or_default().insert(k);
        self.clique_links.entry(k).or_default().insert(c);
    }

    pub fn unlink(&mut self, c: ComponentId, k: CliqueId) {
        if let Some(s) = self.comp_links.get_mut(&c) {
            s.remove(&k);
        }
        if let Some(s) = self.clique_links.get_mut(&k) {
            s.remove(&c);
        }
    }

    pub fn remove_component(&mut self, c: ComponentId) -> Option<ComponentNode> {
        for k in self.comp_links.remove(&c).unwrap_or_default() {
            if let Some(s) = self.clique_links.get_mut(&k) {
                s.remove(&c);
            }
        }
        self.components.remove(&c)
    }

    pub fn remove_clique(&mut self, k: CliqueId) -> Option<CliqueNode> {
        for c in self.clique_links.remove(&k).unwrap_or_default() {
            if let Some(s) = self.comp_links.get_mut(&c) {
                s.remove(&k);
            }
        }
        self.cliques.remove(&k)
    }

    pub fn component(&self, c: ComponentId) -> Option<&ComponentNode> {
        self.components.get(&c)
    }

    pub fn component_mut(&mut self, c: ComponentId) -> Option<&mut ComponentNode> {
        self.components.get_mut(&c)
    }

    pub fn clique(&self, k: CliqueId) -> Option<&CliqueNode> {
        self.cliques.get(&k)
    }

    pub fn components(&self) -> impl Iterator<Item = &ComponentNode> + '_ {
        self.components.values()
    }

    pub fn component_ids(&self) -> Vec<ComponentId> {
        self.components.keys().copied().collect()
    }

    pub fn cliques(&self) -> impl Iterator<Item = &CliqueNode> + '_ {
        self.cliques.values()
    }

    pub fn links(&self) -> impl Iterator<Item = (ComponentId, CliqueId)> + '_ {
        self.comp_links
            .iter()
            .flat_map(|(&c, ks)| ks.iter().map(move |&k| (c, k)))
    }

    pub fn num_components(&self) -> usize {
        self.components.len()
    }

    pub fn num_cliques(&self) -> usize {
        self.cliques.len()
    }

    pub fn cliques_of(&self, c: ComponentId) -> Vec<CliqueId> {
        self.comp_links
            .get(&c)
            .map(|s| s.iter().copied().collect())
            .unwrap_or_default()
    }

    pub fn components_of(&self, k: CliqueId) -> Vec<ComponentId> {
        self.clique_links
            .get(&k)
            .map(|s| s.iter().copied().collect())
            .unwrap_or_default()
    }

    /// Components sharing a clique with `c`, each listed once.
    pub fn neighbors(&self, c: ComponentId) -> Vec<ComponentId> {
        let set: BTreeSet<ComponentId> = self
            .cliques_of(c)
            .into_iter()
            .flat_map(|k| self.components_of(k))
            .filter(|&d| d != c)
            .collect();
        set.into_iter().collect()
    }

    /// The component's underlying simple graph with every incident clique
    /// completed.
    pub fn augmented_skeleton(&self, c: ComponentId) -> SimpleGraph {
        let Some(node) = self.components.get(&c) else {
            return SimpleGraph::new();
        };
        let mut g = SimpleGraph::from_network(&node.network);
        for k in self.cliques_of(c) {
            let vs = &self.cliques[&k].vertices;
            for (i, &u) in vs.iter().enumerate() {
                g.add_vertex(u);
                for &w in &vs[i + 1..] {
                    g.add_edge(u, w);
                }
            }
        }
        g
    }

    /// Union of all component networks over shared vertex ids.
    pub fn reassemble(&self) -> Result<FlowNetwork, FlowError> {
        let mut net = FlowNetwork::new();
        for node in self.components.values() {
            net.absorb(&node.network)?;
        }
        Ok(net)
    }

    /// Removes cliques glued to at most one component, merges cliques with
    /// equal vertex sets hanging off a common component, and drops edgeless
    /// leaf components covered by their only clique. Returns whether
    /// anything changed.
    pub fn normalize(&mut self) -> bool {
        let mut changed = false;
        loop {
            let mut round = false;
            let dangling: Vec<CliqueId> = self
                .clique_links
                .iter()
                .filter(|(_, cs)| cs.len() <= 1)
                .map(|(&k, _)| k)
                .collect();
            for k in dangling {
                self.remove_clique(k);
                round = true;
            }
            for c in self.component_ids() {
                let mut by_set: BTreeMap<Vec<VertexId>, Vec<CliqueId>> = BTreeMap::new();
                for k in self.cliques_of(c) {
                    by_set
                        .entry(self.cliques[&k].vertices.clone())
                        .or_default()
                        .push(k);
                }
                for (_, ks) in by_set {
                    let keep = ks[0];
                    for &other in &ks[1..] {
                        for d in self.components_of(other) {
                            self.link(d, keep);
                        }
                        self.remove_clique(other);
                        round = true;
                    }
                }
            }
            for c in self.component_ids() {
                let node = &self.components[&c];
                let ks = self.cliques_of(c);
                if node.network.num_edges() == 0 && ks.len() == 1 {
                    let k = ks[0];
                    let covered = node
                        .network
                        .vertices()
                        .all(|v| self.cliques[&k].vertices.contains(&v));
                    if covered && self.clique_links[&k].len() >= 2 {
                        self.remove_component(c);
                        round = true;
                    }
                }
            }
            if !round {
                return changed;
            }
            changed = true;
        }
    }
}

/// Outcome of [`validate`]; valid when no diagnostic was produced.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub diagnostics: Vec<String>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.diagnostics.is_empty()
    }
}

/// Vertex cap for [`Label::BoundedTW`] components accepted by [`validate`].
pub const DEFAULT_SIZE_CAP: usize = 10;

pub fn validate(graph: &FlowNetwork, tree: &DecompositionTree) -> ValidationReport {
    validate_with_cap(graph, tree, DEFAULT_SIZE_CAP)
}

/// Checks edge-disjointness and exact reassembly, clique containment and
/// size, tree shape, connectivity of the nodes holding each vertex, and
/// label truthfulness.
pub fn validate_with_cap(
    graph: &FlowNetwork,
    tree: &DecompositionTree,
    size_cap: usize,
) -> ValidationReport {
    let mut diag = Vec::new();
    let mut owner = BTreeMap::new();
    let mut vertices = BTreeSet::new();
    for node in tree.components() {
        for e in node.network.edges() {
            if let Some(prev) = owner.insert(e.id, node.id) {
                diag.push(format!("edge {} appears in {prev} and {}", e.id, node.id));
            }
            match graph.edge(e.id) {
                Some(orig) if orig == e => {}
                Some(_) => diag.push(format!("edge {} differs from the graph", e.id)),
                None => diag.push(format!("edge {} is not in the graph", e.id)),
            }
        }
        vertices.extend(node.network.vertices());
    }
    for e in graph.edges() {
        if !owner.contains_key(&e.id) {
            diag.push(format!("edge {} is missing from every component", e.id));
        }
    }
    if &vertices != graph.vertex_set() {
        diag.push("component vertices differ from the graph's vertices".into());
    }

    for k in tree.cliques() {
        if k.vertices.len() > 3 {
            diag.push(format!("{} has {} vertices", k.id, k.vertices.len()));
        }
        for c in tree.components_of(k.id) {
            match tree.component(c) {
                None => diag.push(format!("{} links to unknown {c}", k.id)),
                Some(node) => {
                    if let Some(v) = k.vertices.iter().find(|&&v| !node.network.contains_vertex(v)) {
                        diag.push(format!("{} vertex {v} missing from {c}", k.id));
                    }
                }
            }
        }
    }

    let nodes = tree.num_components() + tree.num_cliques();
    let links = tree.links().count();
    if nodes > 0 && (links != nodes - 1 || !tree_connected(tree)) {
        diag.push("components and cliques do not form a tree".into());
    }

    // Nodes holding a vertex must form a connected subtree.
    let mut holders: BTreeMap<VertexId, (Vec<ComponentId>, BTreeSet<CliqueId>)> = BTreeMap::new();
    for node in tree.components() {
        for v in node.network.vertices() {
            holders.entry(v).or_default().0.push(node.id);
        }
    }
    for k in tree.cliques() {
        for &v in &k.vertices {
            holders.entry(v).or_default().1.insert(k.id);
        }
    }
    for (v, (comps, ks)) in &holders {
        if comps.len() <= 1 {
            continue;
        }
        let wanted: BTreeSet<ComponentId> = comps.iter().copied().collect();
        let mut seen = BTreeSet::from([comps[0]]);
        let mut queue = VecDeque::from([comps[0]]);
        while let Some(c) = queue.pop_front() {
            for k in tree.cliques_of(c) {
                if !ks.contains(&k) {
                    continue;
                }
                for d in tree.components_of(k) {
                    if wanted.contains(&d) && seen.insert(d) {
                        queue.push_back(d);
                    }
                }
            }
        }
        if seen.len() != wanted.len() {
            diag.push(format!("components holding vertex {v} are not connected through cliques holding it"));
        }
    }

    for node in tree.components() {
        match node.label {
            Label::Planar => {
                if !is_planar(&SimpleGraph::from_network(&node.network)) {
                    diag.push(format!("{} is labelled planar but is not", node.id));
                }
            }
            Label::BoundedTW => {
                if node.network.num_vertices() > size_cap {
                    diag.push(format!(
                        "{} has {} vertices, above the cap of {size_cap}",
                        node.id,
                        node.network.num_vertices()
                    ));
                }
            }
            Label::PlanarPlusK(_) => {}
        }
    }
    ValidationReport { diagnostics: diag }
}

fn tree_connected(tree: &DecompositionTree) -> bool {
    let Some(start) = tree.component_ids().first().copied() else {
        return tree.num_cliques() == 0;
    };
    let mut seen_c = BTreeSet::from([start]);
    let mut seen_k = BTreeSet::new();
    let mut queue = VecDeque::from([start]);
    while let Some(c) = queue.pop_front() {
        for k in tree.cliques_of(c) {
            if seen_k.insert(k) {
                for d in tree.components_of(k) {
                    if seen_c.insert(d) {
                        queue.push_back(d);
                    }
                }
            }
        }
    }
    seen_c.len() == tree.num_components() && seen_k.len() == tree.num_cliques()
}
