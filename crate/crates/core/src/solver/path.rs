use std::collections::{BTreeMap, VecDeque};

use crate::decomp::{CliqueId, ComponentId, DecompositionTree};
use crate::flow::VertexId;

use super::SolveError;

/// Alternating component/clique path between the components holding s and t.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TerminalPath {
    /// From s's component to t's; a single entry when they coincide.
    pub components: Vec<ComponentId>,
    /// `cliques[i]` joins `components[i]` and `components[i + 1]`.
    pub cliques: Vec<CliqueId>,
}

impl TerminalPath {
    /// Number of clique hops.
    pub fn len(&self) -> usize {
        self.cliques.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cliques.is_empty()
    }

    pub fn source_component(&self) -> ComponentId {
        self.components[0]
    }

    pub fn sink_component(&self) -> ComponentId {
        *self.components.last().expect("path is never empty")
    }
}

/// Lowest-id component whose network contains `v`.
pub fn home_component(tree: &DecompositionTree, v: VertexId) -> Option<ComponentId> {
    tree.components()
        .find(|c| c.network.contains_vertex(v))
        .map(|c| c.id)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Node {
    C(ComponentId),
    K(CliqueId),
}

pub fn locate_terminal_path(
    tree: &DecompositionTree,
    s: VertexId,
    t: VertexId,
) -> Result<TerminalPath, SolveError> {
    let from = home_component(tree, s).ok_or(SolveError::MissingTerminal(s))?;
    let to = home_component(tree, t).ok_or(SolveError::MissingTerminal(t))?;
    let mut parent: BTreeMap<Node, Node> = BTreeMap::new();
    let mut queue = VecDeque::from([Node::C(from)]);
    parent.insert(Node::C(from), Node::C(from));
    while let Some(x) = queue.pop_front() {
        if x == Node::C(to) {
            break;
        }
        let next: Vec<Node> = match x {
            Node::C(c) => tree.cliques_of(c).into_iter().map(Node::K).collect(),
            Node::K(k) => tree.components_of(k).into_iter().map(Node::C).collect(),
        };
        for y in next {
            if !parent.contains_key(&y) {
                parent.insert(y, x);
                queue.push_back(y);
            }
        }
    }
    if !parent.contains_key(&Node::C(to)) {
        return Err(SolveError::Internal(format!(
            "components {from} and {to} are not connected in the tree"
        )));
    }
    let mut nodes = vec![Node::C(to)];
    while *nodes.last().unwrap() != Node::C(from) {
        nodes.push(parent[nodes.last().unwrap()]);
    }
    nodes.reverse();
    let mut path = TerminalPath {
        components: Vec::new(),
        cliques: Vec::new(),
    };
    for n in nodes {
        match n {
            Node::C(c) => path.components.push(c),
            Node::K(k) => path.cliques.push(k),
        }
    }
    Ok(path)
}
