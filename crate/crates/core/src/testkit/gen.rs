use std::collections::{BTreeMap, BTreeSet};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::decomp::{CliqueId, DecompositionTree, Label};
use crate::flow::{EdgeId, FlowNetwork, VertexId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    Planar,
    K33Free,
    K5Free,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GenConfig {
    pub family: Family,
    /// Exact vertex count of the generated network, at least 2.
    pub n: usize,
    pub seed: u64,
    /// Capacities are uniform in `1..=max_cap`.
    pub max_cap: u64,
    /// Relative weights of 1-, 2- and 3-sums when gluing a new component.
    pub arity_weights: [f64; 3],
}

impl GenConfig {
    pub fn new(family: Family, n: usize, seed: u64) -> Self {
        Self {
            family,
            n,
            seed,
            max_cap: 20,
            arity_weights: [1.0, 2.0, 4.0],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Kind {
    Planar,
    K5,
    Wagner,
}

/// Structure of one generated component before edges are realized.
struct Piece {
    kind: Kind,
    vertices: Vec<VertexId>,
    pairs: Vec<(VertexId, VertexId)>,
    triangles: Vec<[VertexId; 3]>,
    cliques: Vec<CliqueId>,
}

fn pair(u: VertexId, v: VertexId) -> (VertexId, VertexId) {
    (u.min(v), u.max(v))
}

/// Random stacked triangulation on `s` local vertices. Every triangle that
/// was ever a face is recorded, so later ones can be separating.
fn stacked_triangulation(s: usize, rng: &mut ChaCha8Rng) -> (Vec<(usize, usize)>, Vec<[usize; 3]>) {
    if s == 2 {
        return (vec![(0, 1)], Vec::new());
    }
    let mut edges = vec![(0, 1), (1, 2), (0, 2)];
    let mut faces = vec![[0, 1, 2], [0, 1, 2]];
    let mut all = vec![[0, 1, 2]];
    for k in 3..s {
        let f = rng.gen_range(0..faces.len());
        let [a, b, c] = faces.swap_remove(f);
        edges.extend([(a, k), (b, k), (c, k)]);
        for t in [[a, b, k], [b, c, k], [a, c, k]] {
            faces.push(t);
            all.push(t);
        }
    }
    (edges, all)
}

fn k5_edges() -> Vec<(usize, usize)> {
    let mut e = Vec::new();
    for i in 0..5 {
        for j in i + 1..5 {
            e.push((i, j));
        }
    }
    e
}

fn wagner_edges() -> Vec<(usize, usize)> {
    (0..8)
        .flat_map(|i| [(i, (i + 1) % 8), (i, (i + 4) % 8)])
        .filter(|&(i, j)| i < j || (i, j) == (7, 0))
        .collect()
}

fn local_structure(kind: Kind, s: usize, rng: &mut ChaCha8Rng) -> (Vec<(usize, usize)>, Vec<[usize; 3]>) {
    match kind {
        Kind::Planar => stacked_triangulation(s, rng),
        Kind::K5 => {
            let mut tris = Vec::new();
            for a in 0..5 {
                for b in a + 1..5 {
                    for c in b + 1..5 {
                        tris.push([a, b, c]);
                    }
                }
            }
            (k5_edges(), tris)
        }
        Kind::Wagner => (wagner_edges(), Vec::new()),
    }
}

fn kind_size(kind: Kind) -> Option<usize> {
    match kind {
        Kind::Planar => None,
        Kind::K5 => Some(5),
        Kind::Wagner => Some(8),
    }
}

/// A random network of the requested family together with the clique-sum
/// tree it was built from. Identical configurations give identical output.
pub fn gen_instance(cfg: &GenConfig) -> (FlowNetwork, DecompositionTree) {
    assert!(cfg.n >= 2, "need at least two vertices");
    assert!(cfg.max_cap >= 1, "need a positive capacity range");
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut pieces: Vec<Piece> = Vec::new();
    let mut tree = DecompositionTree::new();
    let mut clique_vertices: BTreeMap<CliqueId, Vec<VertexId>> = BTreeMap::new();
    let mut next_vertex = 1u32;
    let mut placed = 0usize;

    while placed < cfg.n {
        let remaining = cfg.n - placed;
        // Choose the parent and the clique to glue along.
        let (parent, shared) = if pieces.is_empty() {
            (None, Vec::new())
        } else {
            let p = rng.gen_range(0..pieces.len());
            let piece = &pieces[p];
            let mut arities: Vec<usize> = vec![1];
            if !piece.pairs.is_empty() {
                arities.push(2);
            }
            if cfg.family == Family::K5Free && !piece.triangles.is_empty() {
                arities.push(3);
            }
            let arity = *arities
                .choose_weighted(&mut rng, |&a| cfg.arity_weights[a - 1])
                .unwrap_or(&1);
            let reusable: Vec<CliqueId> = piece
                .cliques
                .iter()
                .copied()
                .filter(|k| clique_vertices[k].len() == arity)
                .collect();
            let shared: Vec<VertexId> = if !reusable.is_empty() && rng.gen_bool(0.3) {
                clique_vertices[reusable.choose(&mut rng).unwrap()].clone()
            } else {
                match arity {
                    1 => vec![*piece.vertices.choose(&mut rng).unwrap()],
                    2 => {
                        let (u, v) = *piece.pairs.choose(&mut rng).unwrap();
                        vec![u, v]
                    }
                    _ => piece.triangles.choose(&mut rng).unwrap().to_vec(),
                }
            };
            (Some(p), shared)
        };
        let a = shared.len();

        // Choose the new component's kind and size.
        let mut kind = Kind::Planar;
        let special = match cfg.family {
            Family::Planar => None,
            Family::K33Free => Some((Kind::K5, 0.25)),
            Family::K5Free => Some((Kind::Wagner, 0.2)),
        };
        if let Some((k, prob)) = special {
            let size = kind_size(k).unwrap();
            if a <= 2 && size - a <= remaining && rng.gen_bool(prob) {
                kind = k;
            }
        }
        let size = match kind_size(kind) {
            Some(s) => s,
            None => {
                let want = if cfg.family == Family::Planar {
                    cfg.n
                } else {
                    rng.gen_range(3..=14)
                };
                want.max(a + 1).min(a + remaining)
            }
        };

        let (local_edges, local_tris) = local_structure(kind, size, &mut rng);
        let mut vertices: Vec<VertexId> = shared.clone();
        while vertices.len() < size {
            vertices.push(VertexId(next_vertex));
            next_vertex += 1;
        }
        placed += size - a;
        let pairs: Vec<(VertexId, VertexId)> = local_edges
            .iter()
            .map(|&(i, j)| pair(vertices[i], vertices[j]))
            .collect();
        let triangles: Vec<[VertexId; 3]> = local_tris
            .iter()
            .map(|t| {
                let mut x = t.map(|i| vertices[i]);
                x.sort();
                x
            })
            .collect();
        pieces.push(Piece {
            kind,
            vertices,
            pairs,
            triangles,
            cliques: Vec::new(),
        });
        let me = pieces.len() - 1;
        if let Some(p) = parent {
            let mut sorted = shared.clone();
            sorted.sort();
            let existing = pieces[p]
                .cliques
                .iter()
                .copied()
                .find(|k| clique_vertices[k] == sorted);
            let k = match existing {
                Some(k) => k,
                None => {
                    let k = CliqueId(clique_vertices.len() as u32);
                    clique_vertices.insert(k, sorted);
                    pieces[p].cliques.push(k);
                    k
                }
            };
            pieces[me].cliques.push(k);
        }
    }

    // Realize edges: older components claim shared pairs first.
    let mut realized: BTreeSet<(VertexId, VertexId)> = BTreeSet::new();
    let mut next_edge = 1u32;
    let mut comp_ids = Vec::new();
    for piece in &pieces {
        let mut degree: BTreeMap<VertexId, usize> = BTreeMap::new();
        for &(u, v) in &piece.pairs {
            *degree.entry(u).or_default() += 1;
            *degree.entry(v).or_default() += 1;
        }
        let clique_set: BTreeSet<VertexId> = piece
            .cliques
            .iter()
            .flat_map(|k| clique_vertices[k].iter().copied())
            .collect();
        let mut net = FlowNetwork::new();
        for &v in &piece.vertices {
            net.add_vertex(v);
        }
        for &(u, v) in &piece.pairs {
            if realized.contains(&(u, v)) {
                continue;
            }
            let in_clique = clique_set.contains(&u) && clique_set.contains(&v);
            let p_drop = match (piece.kind, in_clique) {
                (_, true) => 0.25,
                (Kind::Planar, false) => 0.15,
                _ => 0.0,
            };
            if degree[&u] > 1 && degree[&v] > 1 && rng.gen_bool(p_drop) {
                *degree.get_mut(&u).unwrap() -= 1;
                *degree.get_mut(&v).unwrap() -= 1;
                continue;
            }
            realized.insert((u, v));
            let mut arcs = Vec::new();
            if rng.gen_bool(0.2) {
                arcs.push((u, v));
                arcs.push((v, u));
            } else if rng.gen_bool(0.5) {
                arcs.push((u, v));
            } else {
                arcs.push((v, u));
            }
            for (t, h) in arcs {
                let cap = rng.gen_range(1..=cfg.max_cap);
                net.add_edge(EdgeId(next_edge), t, h, cap).expect("fresh edge");
                next_edge += 1;
            }
        }
        let label = if piece.kind == Kind::Planar {
            Label::Planar
        } else {
            Label::BoundedTW
        };
        comp_ids.push(tree.add_component(net, label));
    }
    for (&k, vs) in &clique_vertices {
        tree.insert_clique(k, vs.clone());
    }
    for (i, piece) in pieces.iter().enumerate() {
        for &k in &piece.cliques {
            tree.link(comp_ids[i], k);
        }
    }
    let net = tree.reassemble().expect("components are edge-disjoint");
    (net, tree)
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomp::{validate, SimpleGraph};
    use crate::testkit::{minor_free_check, Forbidden};

    const FAMILIES: [Family; 3] = [Family::Planar, Family::K33Free, Family::K5Free];

    #[test]
    fn ground_truth_trees_validate() {
        for family in FAMILIES {
            for seed in 0..40 {
                let n = 2 + (seed as usize * 7) % 60;
                let (net, tree) = gen_instance(&GenConfig::new(family, n, seed));
                assert_eq!(net.num_vertices(), n, "{family:?} seed {seed}");
                let report = validate(&net, &tree);
                assert!(report.is_valid(), "{family:?} seed {seed}: {:?}", report.diagnostics);
            }
        }
    }

    #[test]
    fn ids_are_one_based_and_dense() {
        let (net, _) = gen_instance(&GenConfig::new(Family::K5Free, 40, 3));
        let vs: Vec<u32> = net.vertices().map(|v| v.0).collect();
        assert_eq!(vs, (1..=40).collect::<Vec<_>>());
        let es: Vec<u32> = net.edges().map(|e| e.id.0).collect();
        assert_eq!(es, (1..=net.num_edges() as u32).collect::<Vec<_>>());
        assert!(net.edges().all(|e| (1..=20).contains(&e.capacity)));
    }

    #[test]
    fn same_seed_same_instance() {
        let cfg = GenConfig::new(Family::K33Free, 50, 11);
        assert_eq!(gen_instance(&cfg), gen_instance(&cfg));
        let other = GenConfig { seed: 12, ..cfg };
        assert_ne!(gen_instance(&other).0, gen_instance(&GenConfig::new(Family::K33Free, 50, 11)).0);
    }

    #[test]
    fn small_instances_avoid_their_minor() {
        for seed in 0..30 {
            for (family, h) in [(Family::K33Free, Forbidden::K33), (Family::K5Free, Forbidden::K5)] {
                let (net, _) = gen_instance(&GenConfig::new(family, 12, seed));
                let g = SimpleGraph::from_network(&net);
                assert!(minor_free_check(&g, h).unwrap(), "{family:?} seed {seed}");
            }
            let (net, _) = gen_instance(&GenConfig::new(Family::Planar, 12, seed));
            assert!(crate::decomp::is_planar(&SimpleGraph::from_network(&net)));
        }
    }

    #[test]
    fn families_use_their_special_pieces() {
        let mut k5 = 0;
        let mut wagner = 0;
        for seed in 0..20 {
            let (_, t) = gen_instance(&GenConfig::new(Family::K33Free, 60, seed));
            k5 += t.components().filter(|c| c.label == Label::BoundedTW).count();
            let (_, t) = gen_instance(&GenConfig::new(Family::K5Free, 60, seed));
            wagner += t.components().filter(|c| c.label == Label::BoundedTW).count();
        }
        assert!(k5 > 0 && wagner > 0);
    }

    #[test]
    fn two_vertex_instance() {
        let (net, tree) = gen_instance(&GenConfig::new(Family::Planar, 2, 0));
        assert_eq!(net.num_vertices(), 2);
        assert_eq!(tree.num_components(), 1);
    }
}
