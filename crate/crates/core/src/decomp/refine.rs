use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::flow::{FlowNetwork, VertexId};

use super::blocks::biconnected_split;
use super::planar::{is_planar, planar_embed, PlanarEmbedding, Planarity};
use super::spqr::{spqr, SpqrKind};
use super::tree::{CliqueId, ComponentId, DecompositionTree, Label};
use super::{DecompError, SimpleGraph};

/// A clique node joining some of the new pieces of a split.
pub(crate) enum Join {
    New(Vec<VertexId>, Vec<usize>),
    Existing(CliqueId, Vec<usize>),
}

/// Replaces component `c` by pieces on the given vertex sets, glued by
/// `joins`. Network edges go to the first piece holding both endpoints;
/// the old incident cliques move to the first piece holding all of their
/// vertices. Pieces are labelled by planarity of their augmented skeleton.
pub(crate) fn replace_component(
    tree: &mut DecompositionTree,
    c: ComponentId,
    pieces: &[BTreeSet<VertexId>],
    joins: Vec<Join>,
) -> Result<Vec<ComponentId>, DecompError> {
    let old_cliques = tree.cliques_of(c);
    let node = tree
        .remove_component(c)
        .ok_or(DecompError::UnknownComponent(c))?;
    let mut nets: Vec<FlowNetwork> = pieces
        .iter()
        .map(|vs| {
            let mut n = FlowNetwork::new();
            for &v in vs {
                n.add_vertex(v);
            }
            n
        })
        .collect();
    for e in node.network.edges() {
        let i = pieces
            .iter()
            .position(|p| p.contains(&e.tail) && p.contains(&e.head))
            .ok_or_else(|| DecompError::Internal(format!("edge {} fits no piece", e.id)))?;
        nets[i].insert(*e)?;
    }
    let ids: Vec<ComponentId> = nets
        .into_iter()
        .map(|n| tree.add_component(n, node.label))
        .collect();
    let mut reused = BTreeSet::new();
    for join in joins {
        let (k, members) = match join {
            Join::New(vs, members) => (tree.add_clique(vs), members),
            Join::Existing(k, members) => {
                reused.insert(k);
                (k, members)
            }
        };
        for i in members {
            tree.link(ids[i], k);
        }
    }
    for k in old_cliques {
        if reused.contains(&k) {
            continue;
        }
        let vs = tree.clique(k).map(|n| n.vertices.clone()).unwrap_or_default();
        let i = pieces
            .iter()
            .position(|p| vs.iter().all(|v| p.contains(v)))
            .ok_or_else(|| DecompError::Internal(format!("clique {k} fits no piece")))?;
        tree.link(ids[i], k);
    }
    for &id in &ids {
        let label = if is_planar(&tree.augmented_skeleton(id)) {
            Label::Planar
        } else {
            Label::BoundedTW
        };
        tree.component_mut(id).unwrap().label = label;
    }
    Ok(ids)
}

/// Splits at cut vertices of the augmented skeleton (1-cliques) and joins
/// disconnected parts with a 0-clique.
pub(crate) fn split_blocks(
    tree: &mut DecompositionTree,
    c: ComponentId,
) -> Result<Option<Vec<ComponentId>>, DecompError> {
    let a = tree.augmented_skeleton(c);
    let bc = biconnected_split(&a);
    if bc.blocks.len() <= 1 {
        return Ok(None);
    }
    let pieces: Vec<BTreeSet<VertexId>> = bc.blocks.iter().map(|b| b.vertices.clone()).collect();
    let mut joins = Vec::new();
    for &v in &bc.articulation_points {
        let members = (0..pieces.len()).filter(|&i| pieces[i].contains(&v)).collect();
        joins.push(Join::New(vec![v], members));
    }
    let parts = a.components();
    if parts.len() > 1 {
        let firsts = parts
            .iter()
            .map(|part| pieces.iter().position(|p| p.is_subset(part)).unwrap())
            .collect();
        joins.push(Join::New(Vec::new(), firsts));
    }
    replace_component(tree, c, &pieces, joins).map(Some)
}

/// Splits a biconnected augmented skeleton along its SPQR tree: one piece
/// per cycle or rigid node, one 2-clique per bond or direct tree edge.
pub(crate) fn split_spqr(
    tree: &mut DecompositionTree,
    c: ComponentId,
) -> Result<Option<Vec<ComponentId>>, DecompError> {
    let a = tree.augmented_skeleton(c);
    if a.num_vertices() < 4 {
        return Ok(None);
    }
    let t = spqr(&a)?;
    if t.nodes.len() <= 1 {
        return Ok(None);
    }
    let mut piece_of = BTreeMap::new();
    let mut pieces = Vec::new();
    for (i, node) in t.nodes.iter().enumerate() {
        if node.kind != SpqrKind::P {
            piece_of.insert(i, pieces.len());
            pieces.push(node.vertices());
        }
    }
    let mut joins = Vec::new();
    for (i, node) in t.nodes.iter().enumerate() {
        if node.kind == SpqrKind::P {
            let members = t
                .links
                .iter()
                .filter_map(|l| match (l.a == i, l.b == i) {
                    (true, _) => Some(piece_of[&l.b]),
                    (_, true) => Some(piece_of[&l.a]),
                    _ => None,
                })
                .collect();
            joins.push(Join::New(node.vertices().into_iter().collect(), members));
        }
    }
    for l in &t.links {
        if let (Some(&pa), Some(&pb)) = (piece_of.get(&l.a), piece_of.get(&l.b)) {
            let vs = t.nodes[l.a]
                .edges
                .iter()
                .find(|e| e.kind == super::spqr::SkeletonEdgeKind::Virtual(l.id))
                .map(|e| vec![e.u, e.v])
                .unwrap_or_default();
            joins.push(Join::New(vs, vec![pa, pb]));
        }
    }
    replace_component(tree, c, &pieces, joins).map(Some)
}

/// Pieces of a 3-split at `triple`: each component of the skeleton minus
/// the triple, plus the triple. `None` when the triple does not separate.
pub(crate) fn triple_pieces(a: &SimpleGraph, triple: &[VertexId]) -> Option<Vec<BTreeSet<VertexId>>> {
    let comps = a.without(triple).components();
    if comps.len() < 2 {
        return None;
    }
    Some(
        comps
            .into_iter()
            .map(|mut p| {
                p.extend(triple.iter().copied());
                p
            })
            .collect(),
    )
}

/// 3-split of `c` at `triple`, reusing an incident clique on exactly those
/// vertices if there is one.
pub(crate) fn split_triple(
    tree: &mut DecompositionTree,
    c: ComponentId,
    triple: [VertexId; 3],
) -> Result<Option<Vec<ComponentId>>, DecompError> {
    let a = tree.augmented_skeleton(c);
    let Some(pieces) = triple_pieces(&a, &triple) else {
        return Ok(None);
    };
    let mut sorted = triple.to_vec();
    sorted.sort();
    let members: Vec<usize> = (0..pieces.len()).collect();
    let join = match tree
        .cliques_of(c)
        .into_iter()
        .find(|&k| tree.clique(k).is_some_and(|n| n.vertices == sorted))
    {
        Some(k) => Join::Existing(k, members),
        None => Join::New(sorted, members),
    };
    replace_component(tree, c, &pieces, vec![join]).map(Some)
}

fn embedding_of(g: &SimpleGraph) -> Option<PlanarEmbedding> {
    match planar_embed(g) {
        Planarity::Planar(e) => Some(e),
        Planarity::NonPlanar(_) => None,
    }
}

fn triangle_cliques(tree: &DecompositionTree, c: ComponentId) -> Vec<(CliqueId, [VertexId; 3])> {
    tree.cliques_of(c)
        .into_iter()
        .filter_map(|k| {
            let vs = &tree.clique(k)?.vertices;
            (vs.len() == 3).then(|| (k, [vs[0], vs[1], vs[2]]))
        })
        .collect()
}

/// Splits a planar component at the first glued triangle that is not a face.
pub(crate) fn split_separating_triangle(
    tree: &mut DecompositionTree,
    c: ComponentId,
) -> Result<Option<Vec<ComponentId>>, DecompError> {
    let tris = triangle_cliques(tree, c);
    if tris.is_empty() {
        return Ok(None);
    }
    let a = tree.augmented_skeleton(c);
    let Some(emb) = embedding_of(&a) else {
        return Ok(None);
    };
    for (k, tri) in tris {
        if emb.has_triangular_face(tri) {
            continue;
        }
        if let Some(pieces) = triple_pieces(&a, &tri) {
            let members = (0..pieces.len()).collect();
            return replace_component(tree, c, &pieces, vec![Join::Existing(k, members)]).map(Some);
        }
    }
    Ok(None)
}

/// Glued triangles of planar components that are not faces of the
/// component's embedding.
pub fn face_condition_violations(tree: &DecompositionTree) -> Vec<(ComponentId, CliqueId)> {
    let mut out = Vec::new();
    for node in tree.components() {
        if node.label != Label::Planar {
            continue;
        }
        let tris = triangle_cliques(tree, node.id);
        if tris.is_empty() {
            continue;
        }
        let emb = embedding_of(&tree.augmented_skeleton(node.id));
        for (k, tri) in tris {
            if !emb.as_ref().is_some_and(|e| e.has_triangular_face(tri)) {
                out.push((node.id, k));
            }
        }
    }
    out
}

/// Applies block, SPQR and (when `triangles`) separating-triangle splits
/// until nothing splits, normalizing in between.
pub(crate) fn split_to_fixpoint(
    tree: &mut DecompositionTree,
    triangles: bool,
) -> Result<(), DecompError> {
    loop {
        let mut queue: VecDeque<ComponentId> = tree.component_ids().into();
        while let Some(c) = queue.pop_front() {
            if tree.component(c).is_none() {
                continue;
            }
            if let Some(p) = split_blocks(tree, c)? {
                queue.extend(p);
                continue;
            }
            if let Some(p) = split_spqr(tree, c)? {
                queue.extend(p);
                continue;
            }
            if triangles && tree.component(c).unwrap().label == Label::Planar {
                if let Some(p) = split_separating_triangle(tree, c)? {
                    queue.extend(p);
                }
            }
        }
        if !tree.normalize() {
            return Ok(());
        }
    }
}

/// Splits every component at cut vertices, separation pairs, and glued
/// triangles that are not faces, until every glued triangle of a planar
/// component is a face. Components that do not split keep their id and
/// label, so refining twice changes nothing.
pub fn refine(tree: &DecompositionTree) -> Result<DecompositionTree, DecompError> {
    let mut out = tree.clone();
    split_to_fixpoint(&mut out, true)?;
    Ok(out)
}

/// Splits a planar, triconnected network along the given triangles until
/// each of them is a face of its piece (or absent from it).
pub fn separating_triangles(
    component: &FlowNetwork,
    triangles: &[[VertexId; 3]],
) -> Result<Vec<FlowNetwork>, DecompError> {
    for t in triangles {
        if let Some(&v) = t.iter().find(|&&v| !component.contains_vertex(v)) {
            return Err(DecompError::UnknownVertex(v));
        }
    }
    let mut base = SimpleGraph::from_network(component);
    for t in triangles {
        base.add_edge(t[0], t[1]);
        base.add_edge(t[1], t[2]);
        base.add_edge(t[0], t[2]);
    }
    if !is_planar(&base) {
        return Err(DecompError::NotPlanar);
    }
    let mut done: Vec<BTreeSet<VertexId>> = Vec::new();
    let mut work = vec![base.vertex_set()];
    'pieces: while let Some(piece) = work.pop() {
        let g = base.induced(&piece);
        let emb = embedding_of(&g).ok_or(DecompError::NotPlanar)?;
        for t in triangles {
            if t.iter().all(|v| piece.contains(v)) && !emb.has_triangular_face(*t) {
                if let Some(parts) = triple_pieces(&g, t) {
                    work.extend(parts.into_iter().rev());
                    continue 'pieces;
                }
            }
        }
        done.push(piece);
    }
    done.sort();
    let mut nets: Vec<FlowNetwork> = done
        .iter()
        .map(|p| {
            let mut n = FlowNetwork::new();
            for &v in p {
                n.add_vertex(v);
            }
            n
        })
        .collect();
    for e in component.edges() {
        let i = done
            .iter()
            .position(|p| p.contains(&e.tail) && p.contains(&e.head))
            .ok_or_else(|| DecompError::Internal(format!("edge {} fits no piece", e.id)))?;
        nets[i].insert(*e)?;
    }
    Ok(nets)
}
