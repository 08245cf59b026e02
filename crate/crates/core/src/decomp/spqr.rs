use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::flow::VertexId;

use super::blocks::{articulation_points, is_biconnected};
use super::{DecompError, SimpleGraph};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SpqrKind {
    /// Cycle.
    S,
    /// Bond: two vertices, three or more parallel edges.
    P,
    /// Simple 3-connected graph.
    R,
    /// A lone vertex or a single edge.
    Q,
}

impl fmt::Display for SpqrKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self {
            SpqrKind::S => "S",
            SpqrKind::P => "P",
            SpqrKind::R => "R",
            SpqrKind::Q => "Q",
        };
        f.write_str(c)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SkeletonEdgeKind {
    Real,
    Virtual(u32),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SkeletonEdge {
    pub u: VertexId,
    pub v: VertexId,
    pub kind: SkeletonEdgeKind,
}

impl SkeletonEdge {
    fn pair(&self) -> (VertexId, VertexId) {
        (self.u.min(self.v), self.u.max(self.v))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpqrNode {
    pub kind: SpqrKind,
    pub edges: Vec<SkeletonEdge>,
    /// Only needed for an edgeless Q node.
    pub isolated: Option<VertexId>,
}

impl SpqrNode {
    pub fn vertices(&self) -> BTreeSet<VertexId> {
        let mut out: BTreeSet<VertexId> = self.edges.iter().flat_map(|e| [e.u, e.v]).collect();
        out.extend(self.isolated);
        out
    }

    pub fn real_edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.edges
            .iter()
            .filter(|e| e.kind == SkeletonEdgeKind::Real)
            .map(|e| e.pair())
    }

    pub fn virtual_ids(&self) -> impl Iterator<Item = u32> + '_ {
        self.edges.iter().filter_map(|e| match e.kind {
            SkeletonEdgeKind::Virtual(id) => Some(id),
            SkeletonEdgeKind::Real => None,
        })
    }
}

/// Tree edge joining the two skeleton edges tagged `Virtual(id)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SpqrLink {
    pub a: usize,
    pub b: usize,
    pub id: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpqrTree {
    pub nodes: Vec<SpqrNode>,
    pub links: Vec<SpqrLink>,
}

fn edge_bundles(edges: &[SkeletonEdge]) -> BTreeMap<(VertexId, VertexId), Vec<usize>> {
    let mut out: BTreeMap<_, Vec<usize>> = BTreeMap::new();
    for (i, e) in edges.iter().enumerate() {
        out.entry(e.pair()).or_default().push(i);
    }
    out
}

fn skeleton_graph(edges: &[SkeletonEdge]) -> SimpleGraph {
    let mut g = SimpleGraph::new();
    for e in edges {
        g.add_edge(e.u, e.v);
    }
    g
}

/// First separation pair `{u, v}` with `u` smallest, then `v` smallest.
fn separation_pair(g: &SimpleGraph) -> Option<(VertexId, VertexId)> {
    g.vertices().find_map(|u| {
        articulation_points(&g.without(&[u]))
            .into_iter()
            .next()
            .map(|v| (u, v))
    })
}

/// Triconnected components by repeated splitting at multiple edges and
/// separation pairs, followed by merging adjacent cycles and adjacent bonds.
pub fn spqr(graph: &SimpleGraph) -> Result<SpqrTree, DecompError> {
    if graph.num_edges() <= 1 && graph.num_vertices() <= 2 && graph.is_connected() {
        let edges: Vec<SkeletonEdge> = graph
            .edges()
            .into_iter()
            .map(|(u, v)| SkeletonEdge {
                u,
                v,
                kind: SkeletonEdgeKind::Real,
            })
            .collect();
        let isolated = if edges.is_empty() {
            graph.vertices().next()
        } else {
            None
        };
        return Ok(SpqrTree {
            nodes: vec![SpqrNode {
                kind: SpqrKind::Q,
                edges,
                isolated,
            }],
            links: Vec::new(),
        });
    }
    if !is_biconnected(graph) {
        return Err(DecompError::NotBiconnected);
    }

    let mut next_virtual = 0u32;
    let input: Vec<SkeletonEdge> = graph
        .edges()
        .into_iter()
        .map(|(u, v)| SkeletonEdge {
            u,
            v,
            kind: SkeletonEdgeKind::Real,
        })
        .collect();
    let mut work = vec![input];
    let mut finished: Vec<(SpqrKind, Vec<SkeletonEdge>)> = Vec::new();
    while let Some(edges) = work.pop() {
        let vcount = edges
            .iter()
            .flat_map(|e| [e.u, e.v])
            .collect::<BTreeSet<_>>()
            .len();
        if vcount == 2 {
            finished.push((SpqrKind::P, edges));
            continue;
        }
        let bundles = edge_bundles(&edges);
        if let Some((&(u, v), members)) = bundles.iter().find(|(_, m)| m.len() >= 2) {
            let id = next_virtual;
            next_virtual += 1;
            let marker = SkeletonEdge {
                u,
                v,
                kind: SkeletonEdgeKind::Virtual(id),
            };
            let mut bond: Vec<SkeletonEdge> = members.iter().map(|&i| edges[i]).collect();
            bond.push(marker);
            let mut rest: Vec<SkeletonEdge> = edges
                .iter()
                .enumerate()
                .filter(|(i, _)| !members.contains(i))
                .map(|(_, e)| *e)
                .collect();
            rest.push(marker);
            work.push(rest);
            work.push(bond);
            continue;
        }
        if vcount == 3 {
            finished.push((SpqrKind::S, edges));
            continue;
        }
        let g = skeleton_graph(&edges);
        let Some((u, v)) = separation_pair(&g) else {
            finished.push((SpqrKind::R, edges));
            continue;
        };
        let first = g.without(&[u, v]).components().swap_remove(0);
        let id = next_virtual;
        next_virtual += 1;
        let marker = SkeletonEdge {
            u,
            v,
            kind: SkeletonEdgeKind::Virtual(id),
        };
        let (mut side, mut rest): (Vec<SkeletonEdge>, Vec<SkeletonEdge>) = edges
            .iter()
            .partition(|e| first.contains(&e.u) || first.contains(&e.v));
        side.push(marker);
        rest.push(marker);
        work.push(rest);
        work.push(side);
    }

    merge_same_kind(finished, next_virtual)
}

/// Dissolves every virtual pair joining two cycles or two bonds.
fn merge_same_kind(
    finished: Vec<(SpqrKind, Vec<SkeletonEdge>)>,
    num_virtual: u32,
) -> Result<SpqrTree, DecompError> {
    let mut nodes: Vec<Option<(SpqrKind, Vec<SkeletonEdge>)>> =
        finished.into_iter().map(Some).collect();
    let mut owners: Vec<Vec<usize>> = vec![Vec::new(); num_virtual as usize];
    for (i, node) in nodes.iter().enumerate() {
        for e in &node.as_ref().unwrap().1 {
            if let SkeletonEdgeKind::Virtual(id) = e.kind {
                owners[id as usize].push(i);
            }
        }
    }
    let mut parent: Vec<usize> = (0..nodes.len()).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut dissolved = vec![false; num_virtual as usize];
    for id in 0..num_virtual as usize {
        if owners[id].len() != 2 {
            return Err(DecompError::Internal(format!(
                "virtual edge {id} has {} owners",
                owners[id].len()
            )));
        }
        let a = find(&mut parent, owners[id][0]);
        let b = find(&mut parent, owners[id][1]);
        let (ka, kb) = (nodes[a].as_ref().unwrap().0, nodes[b].as_ref().unwrap().0);
        if ka == kb && matches!(ka, SpqrKind::S | SpqrKind::P) {
            let (_, eb) = nodes[b].take().unwrap();
            let na = nodes[a].as_mut().unwrap();
            na.1.extend(eb);
            na.1.retain(|e| e.kind != SkeletonEdgeKind::Virtual(id as u32));
            parent[b] = a;
            dissolved[id] = true;
        }
    }
    let mut remap = BTreeMap::new();
    let mut out_nodes = Vec::new();
    for (i, node) in nodes.into_iter().enumerate() {
        if let Some((kind, mut edges)) = node {
            edges.sort();
            remap.insert(i, out_nodes.len());
            out_nodes.push(SpqrNode {
                kind,
                edges,
                isolated: None,
            });
        }
    }
    let mut links = Vec::new();
    for id in 0..num_virtual as usize {
        if !dissolved[id] {
            let a = find(&mut parent, owners[id][0]);
            let b = find(&mut parent, owners[id][1]);
            links.push(SpqrLink {
                a: remap[&a],
                b: remap[&b],
                id: id as u32,
            });
        }
    }
    Ok(SpqrTree {
        nodes: out_nodes,
        links,
    })
}

fn is_cycle(node: &SpqrNode) -> bool {
    let g = skeleton_graph(&node.edges);
    let n = node.vertices().len();
    n >= 3
        && node.edges.len() == n
        && g.num_edges() == n
        && g.is_connected()
        && g.vertices().all(|v| g.degree(v) == 2)
}

pub(crate) fn is_triconnected(g: &SimpleGraph) -> bool {
    g.num_vertices() >= 4
        && is_biconnected(g)
        && g.vertices().all(|u| articulation_points(&g.without(&[u])).is_empty())
}

/// Checks the node typing, virtual-edge pairing, adjacency and bond
/// properties of an SPQR tree, and that the tree is a tree. Returns one
/// message per violation.
pub fn check_spqr_axioms(tree: &SpqrTree) -> Vec<String> {
    let mut errs = Vec::new();
    for (i, node) in tree.nodes.iter().enumerate() {
        let ok = match node.kind {
            SpqrKind::R => {
                let g = skeleton_graph(&node.edges);
                g.num_edges() == node.edges.len() && is_triconnected(&g)
            }
            SpqrKind::S => is_cycle(node),
            SpqrKind::P => {
                node.vertices().len() == 2
                    && node.edges.len() >= 3
                    && node.edges.iter().all(|e| e.u != e.v)
            }
            SpqrKind::Q => tree.nodes.len() == 1 && node.edges.len() <= 1,
        };
        if !ok {
            errs.push(format!("node {i} is not a valid {} skeleton", node.kind));
        }
        if node.kind == SpqrKind::P && node.real_edges().count() > 1 {
            errs.push(format!("bond {i} has more than one real edge"));
        }
    }

    let mut holders: BTreeMap<u32, Vec<(usize, (VertexId, VertexId))>> = BTreeMap::new();
    for (i, node) in tree.nodes.iter().enumerate() {
        for e in &node.edges {
            if let SkeletonEdgeKind::Virtual(id) = e.kind {
                holders.entry(id).or_default().push((i, e.pair()));
            }
        }
    }
    let mut linked = BTreeSet::new();
    for link in &tree.links {
        if !linked.insert(link.id) {
            errs.push(format!("virtual edge {} used by two tree edges", link.id));
        }
        match holders.get(&link.id).map(Vec::as_slice) {
            Some(&[(x, p), (y, q)]) if p == q && ((x, y) == (link.a, link.b) || (y, x) == (link.a, link.b)) => {}
            _ => errs.push(format!("tree edge {} does not pair two matching virtual edges", link.id)),
        }
        let (ka, kb) = (tree.nodes[link.a].kind, tree.nodes[link.b].kind);
        if ka == kb && ka != SpqrKind::R {
            errs.push(format!("adjacent nodes {} and {} are both {ka}", link.a, link.b));
        }
    }
    for id in holders.keys() {
        if !linked.contains(id) {
            errs.push(format!("virtual edge {id} belongs to no tree edge"));
        }
    }

    let n = tree.nodes.len();
    let mut g = SimpleGraph::new();
    for i in 0..n {
        g.add_vertex(VertexId(i as u32));
    }
    for l in &tree.links {
        g.add_edge(VertexId(l.a as u32), VertexId(l.b as u32));
    }
    if n == 0 || tree.links.len() != n - 1 || !g.is_connected() || g.num_edges() != tree.links.len() {
        errs.push("node links do not form a tree".into());
    }
    errs
}

/// Glues every virtual pair and deletes it: the surviving real edges, sorted.
pub fn reassemble_spqr(tree: &SpqrTree) -> Vec<(VertexId, VertexId)> {
    let mut edges: Vec<_> = tree.nodes.iter().flat_map(|n| n.real_edges()).collect();
    edges.sort();
    edges
}
