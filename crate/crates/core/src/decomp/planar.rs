use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use crate::flow::VertexId;

use super::blocks::biconnected_split;
use super::SimpleGraph;

/// Rotation system plus the faces it traces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlanarEmbedding {
    /// Clockwise neighbour order around each vertex.
    pub rotation: BTreeMap<VertexId, Vec<VertexId>>,
    /// Each face as its boundary walk; isolated vertices have no walk.
    pub faces: Vec<Vec<VertexId>>,
}

impl PlanarEmbedding {
    /// Whether some face is bounded by exactly the triangle on these vertices.
    pub fn has_triangular_face(&self, tri: [VertexId; 3]) -> bool {
        let want: BTreeSet<VertexId> = tri.into_iter().collect();
        self.faces
            .iter()
            .any(|f| f.len() == 3 && f.iter().copied().collect::<BTreeSet<_>>() == want)
    }

    /// `V - E + F = 2` on every connected component, counting one face for
    /// an isolated vertex, and every edge seen exactly twice among the faces.
    pub fn euler_holds(&self, graph: &SimpleGraph) -> bool {
        let mut dart_count = 0;
        for f in &self.faces {
            dart_count += f.len();
        }
        if dart_count != 2 * graph.num_edges() {
            return false;
        }
        let comps = graph.components();
        let comp_of: BTreeMap<VertexId, usize> = comps
            .iter()
            .enumerate()
            .flat_map(|(i, c)| c.iter().map(move |&v| (v, i)))
            .collect();
        let mut faces = vec![0i64; comps.len()];
        for f in &self.faces {
            faces[comp_of[&f[0]]] += 1;
        }
        comps.iter().enumerate().all(|(i, c)| {
            let v = c.len() as i64;
            let e = graph.induced(c).num_edges() as i64;
            let f = if e == 0 { 1 } else { faces[i] };
            v - e + f == 2
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Kuratowski {
    K5,
    K33,
}

/// Edges of a subdivided K5 or K3,3 inside the graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NonPlanarWitness {
    pub kind: Kuratowski,
    pub edges: Vec<(VertexId, VertexId)>,
}

impl fmt::Display for NonPlanarWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self.kind {
            Kuratowski::K5 => "K5",
            Kuratowski::K33 => "K3,3",
        };
        let edges: Vec<String> = self.edges.iter().map(|(u, v)| format!("{u}-{v}")).collect();
        write!(f, "{name} subdivision on edges {}", edges.join(" "))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Planarity {
    Planar(PlanarEmbedding),
    NonPlanar(NonPlanarWitness),
}

/// A fragment of the graph not yet embedded: a chord between embedded
/// vertices or a component of the unembedded vertices.
struct Fragment {
    attachments: Vec<VertexId>,
    inner: Option<BTreeSet<VertexId>>,
}

fn shortest_cycle_through_edge(g: &SimpleGraph, s: VertexId, t: VertexId) -> Option<Vec<VertexId>> {
    let mut parent = BTreeMap::from([(t, t)]);
    let mut queue = VecDeque::from([t]);
    while let Some(u) = queue.pop_front() {
        for w in g.neighbors(u) {
            if (u == t && w == s) || parent.contains_key(&w) {
                continue;
            }
            parent.insert(w, u);
            if w == s {
                let mut path = vec![s];
                let mut x = s;
                while x != t {
                    x = parent[&x];
                    path.push(x);
                }
                return Some(path);
            }
            queue.push_back(w);
        }
    }
    None
}

/// Path from `a` through fragment vertices to a different attachment.
fn fragment_path(
    g: &SimpleGraph,
    inner: &BTreeSet<VertexId>,
    embedded: &BTreeSet<VertexId>,
    a: VertexId,
) -> Option<Vec<VertexId>> {
    let mut parent = BTreeMap::new();
    let mut queue = VecDeque::new();
    for w in g.neighbors(a) {
        if inner.contains(&w) {
            parent.insert(w, a);
            queue.push_back(w);
        }
    }
    while let Some(u) = queue.pop_front() {
        for w in g.neighbors(u) {
            if w != a && embedded.contains(&w) {
                let mut path = vec![w, u];
                let mut x = u;
                while parent[&x] != a {
                    x = parent[&x];
                    path.push(x);
                }
                path.push(a);
                path.reverse();
                return Some(path);
            }
            if inner.contains(&w) && !parent.contains_key(&w) {
                parent.insert(w, u);
                queue.push_back(w);
            }
        }
    }
    None
}

/// Faces of a planar embedding of a biconnected graph with at least three
/// vertices by path addition, or `None` if it is not planar.
fn embed_biconnected(g: &SimpleGraph) -> Option<Vec<Vec<VertexId>>> {
    let s = g.vertices().next()?;
    let t = g.neighbors(s).next()?;
    let cycle = shortest_cycle_through_edge(g, s, t)?;
    let mut embedded: BTreeSet<VertexId> = cycle.iter().copied().collect();
    let mut embedded_edges: BTreeSet<(VertexId, VertexId)> = BTreeSet::new();
    for i in 0..cycle.len() {
        let (u, w) = (cycle[i], cycle[(i + 1) % cycle.len()]);
        embedded_edges.insert((u.min(w), u.max(w)));
    }
    let mut rev = cycle.clone();
    rev.reverse();
    let mut faces = vec![cycle, rev];

    while embedded_edges.len() < g.num_edges() {
        let mut fragments = Vec::new();
        for (u, w) in g.edges() {
            if embedded.contains(&u) && embedded.contains(&w) && !embedded_edges.contains(&(u, w)) {
                fragments.push(Fragment {
                    attachments: vec![u, w],
                    inner: None,
                });
            }
        }
        let rest = g.without(&embedded.iter().copied().collect::<Vec<_>>());
        for comp in rest.components() {
            let attachments: BTreeSet<VertexId> = comp
                .iter()
                .flat_map(|&x| g.neighbors(x))
                .filter(|w| embedded.contains(w))
                .collect();
            fragments.push(Fragment {
                attachments: attachments.into_iter().collect(),
                inner: Some(comp),
            });
        }
        let face_sets: Vec<BTreeSet<VertexId>> =
            faces.iter().map(|f| f.iter().copied().collect()).collect();
        let admissible: Vec<Vec<usize>> = fragments
            .iter()
            .map(|fr| {
                (0..faces.len())
                    .filter(|&i| fr.attachments.iter().all(|a| face_sets[i].contains(a)))
                    .collect()
            })
            .collect();
        if admissible.iter().any(Vec::is_empty) {
            return None;
        }
        let pick = admissible.iter().position(|a| a.len() == 1).unwrap_or(0);
        let face_idx = admissible[pick][0];
        let fragment = &fragments[pick];
        let path = match &fragment.inner {
            None => fragment.attachments.clone(),
            Some(inner) => fragment_path(g, inner, &embedded, fragment.attachments[0])?,
        };

        let face = faces.swap_remove(face_idx);
        let (a1, a2) = (path[0], *path.last().unwrap());
        let i = face.iter().position(|&x| x == a1)?;
        let j = face.iter().position(|&x| x == a2)?;
        let walk = |from: usize, to: usize| -> Vec<VertexId> {
            let mut out = vec![face[from]];
            let mut k = from;
            while k != to {
                k = (k + 1) % face.len();
                out.push(face[k]);
            }
            out
        };
        let interior = &path[1..path.len() - 1];
        let mut f1 = walk(i, j);
        f1.extend(interior.iter().rev());
        let mut f2 = walk(j, i);
        f2.extend(interior.iter());
        faces.push(f1);
        faces.push(f2);
        for k in 0..path.len() - 1 {
            let (u, w) = (path[k], path[k + 1]);
            embedded_edges.insert((u.min(w), u.max(w)));
            embedded.insert(w);
        }
    }
    Some(faces)
}

fn rotation_from_faces(faces: &[Vec<VertexId>]) -> Option<BTreeMap<VertexId, Vec<VertexId>>> {
    let mut succ: BTreeMap<VertexId, BTreeMap<VertexId, VertexId>> = BTreeMap::new();
    for f in faces {
        let l = f.len();
        for k in 0..l {
            let (u, v, w) = (f[k], f[(k + 1) % l], f[(k + 2) % l]);
            succ.entry(v).or_default().insert(u, w);
        }
    }
    let mut rotation = BTreeMap::new();
    for (v, next) in succ {
        let start = *next.keys().next()?;
        let mut order = vec![start];
        let mut x = next[&start];
        while x != start {
            order.push(x);
            x = *next.get(&x)?;
            if order.len() > next.len() {
                return None;
            }
        }
        if order.len() != next.len() {
            return None;
        }
        rotation.insert(v, order);
    }
    Some(rotation)
}

fn trace_faces(rotation: &BTreeMap<VertexId, Vec<VertexId>>) -> Vec<Vec<VertexId>> {
    let position: BTreeMap<(VertexId, VertexId), usize> = rotation
        .iter()
        .flat_map(|(&v, order)| order.iter().enumerate().map(move |(i, &u)| ((v, u), i)))
        .collect();
    let mut used = BTreeSet::new();
    let mut faces = Vec::new();
    for (&u, order) in rotation {
        for &v in order {
            if used.contains(&(u, v)) {
                continue;
            }
            let mut face = Vec::new();
            let (mut a, mut b) = (u, v);
            while used.insert((a, b)) {
                face.push(a);
                let around = &rotation[&b];
                let next = around[(position[&(b, a)] + 1) % around.len()];
                (a, b) = (b, next);
            }
            faces.push(face);
        }
    }
    faces
}

fn classify(witness: &SimpleGraph) -> Kuratowski {
    let branch = witness.vertices().filter(|&v| witness.degree(v) >= 3).count();
    if branch == 5 {
        Kuratowski::K5
    } else {
        Kuratowski::K33
    }
}

/// Deletes every edge whose removal keeps the graph nonplanar.
fn minimal_nonplanar(g: &SimpleGraph) -> SimpleGraph {
    let mut h = g.clone();
    for (u, v) in g.edges() {
        h.remove_edge(u, v);
        if is_planar(&h) {
            h.add_edge(u, v);
        }
    }
    let isolated: Vec<VertexId> = h.vertices().filter(|&v| h.degree(v) == 0).collect();
    h.without(&isolated)
}

fn blocks_embeddable(g: &SimpleGraph) -> Result<Vec<Vec<Vec<VertexId>>>, SimpleGraph> {
    let mut out = Vec::new();
    for block in biconnected_split(g).blocks {
        if block.vertices.len() < 3 {
            out.push(Vec::new());
            continue;
        }
        let bg = g.induced(&block.vertices);
        let n = bg.num_vertices();
        if bg.num_edges() > 3 * n - 6 {
            return Err(bg);
        }
        match embed_biconnected(&bg) {
            Some(faces) => out.push(faces),
            None => return Err(bg),
        }
    }
    Ok(out)
}

pub fn is_planar(g: &SimpleGraph) -> bool {
    let n = g.num_vertices();
    if n >= 3 && g.num_edges() > 3 * n - 6 {
        return false;
    }
    blocks_embeddable(g).is_ok()
}

/// A planar embedding, or a Kuratowski subdivision contained in the graph.
pub fn planar_embed(g: &SimpleGraph) -> Planarity {
    let block_faces = match blocks_embeddable(g) {
        Ok(f) => f,
        Err(bad_block) => {
            let w = minimal_nonplanar(&bad_block);
            return Planarity::NonPlanar(NonPlanarWitness {
                kind: classify(&w),
                edges: w.edges(),
            });
        }
    };
    let blocks = biconnected_split(g).blocks;
    let mut rotation: BTreeMap<VertexId, Vec<VertexId>> =
        g.vertices().map(|v| (v, Vec::new())).collect();
    for (block, faces) in blocks.iter().zip(block_faces) {
        if faces.is_empty() {
            for &(u, v) in &block.edges {
                rotation.get_mut(&u).unwrap().push(v);
                rotation.get_mut(&v).unwrap().push(u);
            }
            continue;
        }
        let rot = rotation_from_faces(&faces).expect("consistent face set");
        for (v, order) in rot {
            rotation.get_mut(&v).unwrap().extend(order);
        }
    }
    let faces = trace_faces(&rotation);
    Planarity::Planar(PlanarEmbedding { rotation, faces })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complete(n: u32) -> SimpleGraph {
        let mut e = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                e.push((i, j));
            }
        }
        SimpleGraph::from_edges(&e)
    }

    fn k33() -> SimpleGraph {
        let mut e = Vec::new();
        for i in 0..3 {
            for j in 3..6 {
                e.push((i, j));
            }
        }
        SimpleGraph::from_edges(&e)
    }

    fn embedding(g: &SimpleGraph) -> PlanarEmbedding {
        match planar_embed(g) {
            Planarity::Planar(e) => e,
            Planarity::NonPlanar(w) => panic!("unexpected witness {w}"),
        }
    }

    #[test]
    fn k4_has_four_faces() {
        let g = complete(4);
        let e = embedding(&g);
        assert_eq!(e.faces.len(), 4);
        assert!(e.euler_holds(&g));
        assert!(e.has_triangular_face([VertexId(0), VertexId(1), VertexId(2)]));
    }

    #[test]
    fn k5_and_k33_are_nonplanar() {
        for (g, kind) in [(complete(5), Kuratowski::K5), (k33(), Kuratowski::K33)] {
            assert!(!is_planar(&g));
            match planar_embed(&g) {
                Planarity::NonPlanar(w) => {
                    assert_eq!(w.kind, kind);
                    assert_eq!(w.edges, g.edges());
                }
                Planarity::Planar(_) => panic!("embedded a nonplanar graph"),
            }
        }
    }

    #[test]
    fn subdivided_k33_witness_inside_bigger_graph() {
        // K3,3 with edge 0-3 subdivided by 9, plus a pendant triangle.
        let mut g = k33();
        g.remove_edge(VertexId(0), VertexId(3));
        for (u, v) in [(0, 9), (9, 3), (5, 10), (10, 11), (11, 5)] {
            g.add_edge(VertexId(u), VertexId(v));
        }
        match planar_embed(&g) {
            Planarity::NonPlanar(w) => {
                assert_eq!(w.kind, Kuratowski::K33);
                assert_eq!(w.edges.len(), 10);
            }
            Planarity::Planar(_) => panic!(),
        }
    }

    #[test]
    fn octahedron_faces_are_triangles() {
        let g = SimpleGraph::from_edges(&[
            (0, 1),
            (0, 2),
            (0, 3),
            (0, 4),
            (5, 1),
            (5, 2),
            (5, 3),
            (5, 4),
            (1, 2),
            (2, 3),
            (3, 4),
            (4, 1),
        ]);
        let e = embedding(&g);
        assert_eq!(e.faces.len(), 8);
        assert!(e.faces.iter().all(|f| f.len() == 3));
        assert!(e.euler_holds(&g));
    }

    #[test]
    fn forest_and_cut_vertices() {
        let mut g = SimpleGraph::from_edges(&[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2), (4, 5)]);
        g.add_vertex(VertexId(8));
        g.add_edge(VertexId(6), VertexId(7));
        let e = embedding(&g);
        assert!(e.euler_holds(&g));
    }

    #[test]
    fn stacked_tetrahedron_inner_triangle_not_a_face() {
        // Outer triangle 0,1,2 with 3 inside, then 4 inside triangle 0,1,3.
        let g = SimpleGraph::from_edges(&[
            (0, 1),
            (1, 2),
            (2, 0),
            (3, 0),
            (3, 1),
            (3, 2),
            (4, 0),
            (4, 1),
            (4, 3),
        ]);
        let e = embedding(&g);
        assert!(!e.has_triangular_face([VertexId(0), VertexId(1), VertexId(3)]));
        assert!(e.has_triangular_face([VertexId(0), VertexId(1), VertexId(4)]));
    }
}
