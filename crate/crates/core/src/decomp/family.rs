use std::collections::BTreeMap;

use crate::flow::{FlowNetwork, VertexId};

use super::blocks::articulation_points;
use super::planar::{is_planar, planar_embed, NonPlanarWitness, Planarity};
use super::refine::{split_blocks, split_spqr, split_to_fixpoint, split_triple};
use super::tree::{ComponentId, DecompositionTree, Label};
use super::{DecompError, SimpleGraph};

pub fn is_k5(g: &SimpleGraph) -> bool {
    g.num_vertices() == 5 && g.num_edges() == 10
}

/// Isomorphism test against the 8-cycle with its four long diagonals.
pub fn is_wagner(g: &SimpleGraph) -> bool {
    if g.num_vertices() != 8 || g.num_edges() != 12 || g.vertices().any(|v| g.degree(v) != 3) {
        return false;
    }
    let vs: Vec<VertexId> = g.vertices().collect();
    let wagner_adj = |i: usize, j: usize| {
        let d = (i + 8 - j) % 8;
        d == 1 || d == 7 || d == 4
    };
    // Position i of the Wagner graph is mapped to `image[i]`.
    fn extend(
        g: &SimpleGraph,
        vs: &[VertexId],
        image: &mut Vec<VertexId>,
        adj: &dyn Fn(usize, usize) -> bool,
    ) -> bool {
        let i = image.len();
        if i == 8 {
            return true;
        }
        for &v in vs {
            if image.contains(&v) {
                continue;
            }
            if (0..i).all(|j| adj(i, j) == g.has_edge(v, image[j])) {
                image.push(v);
                if extend(g, vs, image, adj) {
                    return true;
                }
                image.pop();
            }
        }
        false
    }
    extend(g, &vs, &mut Vec::new(), &wagner_adj)
}

fn witness(g: &SimpleGraph) -> NonPlanarWitness {
    match planar_embed(g) {
        Planarity::NonPlanar(w) => w,
        Planarity::Planar(_) => unreachable!("witness requested for a planar graph"),
    }
}

/// Splits at cut vertices and separation pairs; every piece must then be
/// planar or a K5.
pub fn decompose_k33_free(graph: &FlowNetwork) -> Result<DecompositionTree, DecompError> {
    let mut tree = DecompositionTree::single(graph.clone(), Label::Planar);
    split_to_fixpoint(&mut tree, false)?;
    for c in tree.component_ids() {
        let a = tree.augmented_skeleton(c);
        let label = if is_planar(&a) {
            Label::Planar
        } else if is_k5(&a) {
            Label::BoundedTW
        } else {
            return Err(DecompError::NotK33MinorFree {
                component: c,
                witness: witness(&a),
            });
        };
        tree.component_mut(c).unwrap().label = label;
    }
    Ok(tree)
}

/// Separating vertex triples of a 3-connected graph in lexicographic order.
pub fn separating_triples(g: &SimpleGraph) -> Vec<[VertexId; 3]> {
    let vs: Vec<VertexId> = g.vertices().collect();
    let mut out = Vec::new();
    for (i, &a) in vs.iter().enumerate() {
        let ga = g.without(&[a]);
        for &b in &vs[i + 1..] {
            let gab = ga.without(&[b]);
            for c in articulation_points(&gab) {
                if c > b {
                    out.push([a, b, c]);
                }
            }
        }
    }
    out
}

/// Splits the given components at cut vertices, separation pairs and
/// separating triples until every piece is planar or a Wagner graph. A
/// triple whose pieces cannot all be resolved is undone and the next one
/// is tried.
fn settle_k5(
    tree: &mut DecompositionTree,
    mut queue: Vec<ComponentId>,
) -> Result<(), DecompError> {
    while let Some(c) = queue.pop() {
        if tree.component(c).is_none() {
            continue;
        }
        if let Some(p) = split_blocks(tree, c)? {
            queue.extend(p.into_iter().rev());
            continue;
        }
        if let Some(p) = split_spqr(tree, c)? {
            queue.extend(p.into_iter().rev());
            continue;
        }
        let a = tree.augmented_skeleton(c);
        if is_planar(&a) {
            tree.component_mut(c).unwrap().label = Label::Planar;
            continue;
        }
        if is_wagner(&a) {
            tree.component_mut(c).unwrap().label = Label::BoundedTW;
            continue;
        }
        let mut resolved = false;
        for triple in separating_triples(&a) {
            let mut trial = tree.clone();
            let Some(pieces) = split_triple(&mut trial, c, triple)? else {
                continue;
            };
            match settle_k5(&mut trial, pieces) {
                Ok(()) => {
                    *tree = trial;
                    resolved = true;
                    break;
                }
                Err(DecompError::NotK5MinorFree { .. }) => {}
                Err(e) => return Err(e),
            }
        }
        if !resolved {
            return Err(DecompError::NotK5MinorFree {
                component: c,
                witness: witness(&a),
            });
        }
    }
    Ok(())
}

/// Splits at cut vertices, separation pairs and separating triples until
/// every piece is planar or the Wagner graph.
pub fn decompose_k5_free(graph: &FlowNetwork) -> Result<DecompositionTree, DecompError> {
    let mut tree = DecompositionTree::single(graph.clone(), Label::Planar);
    loop {
        let queue: Vec<ComponentId> = tree.component_ids().into_iter().rev().collect();
        settle_k5(&mut tree, queue)?;
        if !tree.normalize() {
            break;
        }
    }
    Ok(tree)
}

/// Count of components per label, for reporting.
pub fn label_counts(tree: &DecompositionTree) -> BTreeMap<&'static str, usize> {
    let mut out = BTreeMap::new();
    for c in tree.components() {
        let name = match c.label {
            Label::Planar => "planar",
            Label::PlanarPlusK(_) => "planar+k",
            Label::BoundedTW => "btw",
        };
        *out.entry(name).or_default() += 1;
    }
    out
}
