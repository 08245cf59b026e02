use std::collections::{BTreeMap, BTreeSet};

use crate::flow::VertexId;

use super::SimpleGraph;

/// A maximal biconnected piece: a bridge, an isolated vertex, or a
/// 2-connected subgraph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Block {
    pub vertices: BTreeSet<VertexId>,
    pub edges: Vec<(VertexId, VertexId)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockCut {
    pub blocks: Vec<Block>,
    pub articulation_points: BTreeSet<VertexId>,
}

/// Block-cut decomposition by an iterative Tarjan search. Blocks are
/// edge-disjoint and ordered by discovery; isolated vertices form their own
/// edgeless blocks.
pub fn biconnected_split(graph: &SimpleGraph) -> BlockCut {
    const UNSEEN: usize = usize::MAX;
    let ids: Vec<VertexId> = graph.vertices().collect();
    let index: BTreeMap<VertexId, usize> = ids.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let adj: Vec<Vec<usize>> = ids
        .iter()
        .map(|&v| graph.neighbors(v).map(|w| index[&w]).collect())
        .collect();
    let n = ids.len();
    let mut disc = vec![UNSEEN; n];
    let mut low = vec![0; n];
    let mut timer = 0;
    let mut blocks = Vec::new();
    let mut cut = vec![false; n];

    for root in 0..n {
        if disc[root] != UNSEEN {
            continue;
        }
        disc[root] = timer;
        low[root] = timer;
        timer += 1;
        if adj[root].is_empty() {
            blocks.push(Block {
                vertices: BTreeSet::from([ids[root]]),
                edges: Vec::new(),
            });
            continue;
        }
        let mut root_children = 0;
        let mut edge_stack: Vec<(usize, usize)> = Vec::new();
        // (vertex, parent, next neighbour position)
        let mut stack = vec![(root, UNSEEN, 0usize)];
        while let Some(top) = stack.last_mut() {
            let (v, parent) = (top.0, top.1);
            if top.2 < adj[v].len() {
                let w = adj[v][top.2];
                top.2 += 1;
                if disc[w] == UNSEEN {
                    edge_stack.push((v, w));
                    disc[w] = timer;
                    low[w] = timer;
                    timer += 1;
                    stack.push((w, v, 0));
                } else if w != parent && disc[w] < disc[v] {
                    edge_stack.push((v, w));
                    low[v] = low[v].min(disc[w]);
                }
                continue;
            }
            stack.pop();
            let Some(&(u, _, _)) = stack.last() else {
                break;
            };
            low[u] = low[u].min(low[v]);
            if low[v] >= disc[u] {
                if u == root {
                    root_children += 1;
                } else {
                    cut[u] = true;
                }
                let mut block = Block {
                    vertices: BTreeSet::new(),
                    edges: Vec::new(),
                };
                while let Some((a, b)) = edge_stack.pop() {
                    block.vertices.insert(ids[a]);
                    block.vertices.insert(ids[b]);
                    block.edges.push((ids[a].min(ids[b]), ids[a].max(ids[b])));
                    if (a, b) == (u, v) {
                        break;
                    }
                }
                block.edges.sort();
                blocks.push(block);
            }
        }
        if root_children >= 2 {
            cut[root] = true;
        }
    }
    let articulation_points = (0..n).filter(|&i| cut[i]).map(|i| ids[i]).collect();
    BlockCut {
        blocks,
        articulation_points,
    }
}

pub fn articulation_points(graph: &SimpleGraph) -> BTreeSet<VertexId> {
    biconnected_split(graph).articulation_points
}

/// Connected with at least two vertices and no cut vertex. A single edge
/// counts as biconnected.
pub fn is_biconnected(graph: &SimpleGraph) -> bool {
    graph.num_vertices() >= 2 && graph.is_connected() && articulation_points(graph).is_empty()
}
