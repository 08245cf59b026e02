//! JSON decomposition files.

use serde::{Deserialize, Serialize};

use minorflow::decomp::{CliqueId, ComponentId, DecompositionTree, Label};
use minorflow::flow::{EdgeId, FlowNetwork, VertexId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FileLabel {
    Planar,
    Btw,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentEntry {
    pub id: u32,
    pub label: FileLabel,
    pub vertices: Vec<u32>,
    /// `[edge_id, tail, head, capacity]`.
    pub edges: Vec<[u64; 4]>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CliqueEntry {
    pub id: u32,
    pub vertices: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DecompositionFile {
    pub components: Vec<ComponentEntry>,
    pub cliques: Vec<CliqueEntry>,
    /// `[component_id, clique_id]`.
    pub tree_edges: Vec<[u32; 2]>,
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum TreeFileError {
    #[error("invalid JSON: {0}")]
    Json(String),
    #[error("component {0} has label planar+k, which has no file form")]
    Unserializable(ComponentId),
    #[error("{0}")]
    Invalid(String),
}

impl DecompositionFile {
    /// Canonical form: everything sorted by id.
    pub fn from_tree(tree: &DecompositionTree) -> Result<Self, TreeFileError> {
        let mut components = Vec::new();
        for c in tree.components() {
            let label = match c.label {
                Label::Planar => FileLabel::Planar,
                Label::BoundedTW => FileLabel::Btw,
                Label::PlanarPlusK(_) => return Err(TreeFileError::Unserializable(c.id)),
            };
            components.push(ComponentEntry {
                id: c.id.0,
                label,
                vertices: c.network.vertices().map(|v| v.0).collect(),
                edges: c
                    .network
                    .edges()
                    .map(|e| [e.id.0 as u64, e.tail.0 as u64, e.head.0 as u64, e.capacity])
                    .collect(),
            });
        }
        let cliques = tree
            .cliques()
            .map(|k| CliqueEntry {
                id: k.id.0,
                vertices: k.vertices.iter().map(|v| v.0).collect(),
            })
            .collect();
        let mut tree_edges: Vec<[u32; 2]> = tree.links().map(|(c, k)| [c.0, k.0]).collect();
        tree_edges.sort();
        Ok(Self {
            components,
            cliques,
            tree_edges,
        })
    }

    pub fn to_tree(&self) -> Result<DecompositionTree, TreeFileError> {
        let ids = |x: u64, what: &str| -> Result<u32, TreeFileError> {
            u32::try_from(x).map_err(|_| TreeFileError::Invalid(format!("{what} {x} out of range")))
        };
        let mut tree = DecompositionTree::new();
        for c in &self.components {
            let id = ComponentId(c.id);
            if tree.component(id).is_some() {
                return Err(TreeFileError::Invalid(format!("component {id} listed twice")));
            }
            let mut net = FlowNetwork::new();
            for &v in &c.vertices {
                net.add_vertex(VertexId(v));
            }
            for &[e, u, w, cap] in &c.edges {
                let (u, w) = (VertexId(ids(u, "vertex")?), VertexId(ids(w, "vertex")?));
                for v in [u, w] {
                    if !net.contains_vertex(v) {
                        return Err(TreeFileError::Invalid(format!(
                            "edge {e} of component {id} uses unlisted vertex {v}"
                        )));
                    }
                }
                net.add_edge(EdgeId(ids(e, "edge id")?), u, w, cap)
                    .map_err(|err| TreeFileError::Invalid(format!("component {id}: {err}")))?;
            }
            let label = match c.label {
                FileLabel::Planar => Label::Planar,
                FileLabel::Btw => Label::BoundedTW,
            };
            tree.insert_component(id, net, label);
        }
        for k in &self.cliques {
            let id = CliqueId(k.id);
            if tree.clique(id).is_some() {
                return Err(TreeFileError::Invalid(format!("clique {id} listed twice")));
            }
            if k.vertices.len() > 3 {
                return Err(TreeFileError::Invalid(format!("clique {id} has more than 3 vertices")));
            }
            tree.insert_clique(id, k.vertices.iter().map(|&v| VertexId(v)).collect());
        }
        for &[c, k] in &self.tree_edges {
            let (c, k) = (ComponentId(c), CliqueId(k));
            if tree.component(c).is_none() || tree.clique(k).is_none() {
                return Err(TreeFileError::Invalid(format!("tree edge {c}-{k} names a missing node")));
            }
            tree.link(c, k);
        }
        Ok(tree)
    }

    pub fn parse(text: &str) -> Result<Self, TreeFileError> {
        serde_json::from_str(text).map_err(|e| TreeFileError::Json(e.to_string()))
    }

    pub fn print(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("plain data serializes");
        s.push('\n');
        s
    }
}
