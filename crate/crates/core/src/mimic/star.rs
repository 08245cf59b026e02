use std::collections::BTreeSet;

use crate::flow::{cut_table, CutMode, CutTable, FlowNetwork, FreshIds, TerminalSet, VertexId};

use super::{check_three_way, MimicError};

/// Cut values defining the 3-terminal star: for each terminal `q`, the cut
/// `q -/-> rest` and the cut `rest -/-> q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Mimic3Spec {
    pub terminals: [VertexId; 3],
    pub outgoing: [u64; 3],
    pub incoming: [u64; 3],
}

fn nonnegative(values: [i64; 3]) -> Result<[u64; 3], MimicError> {
    let mut out = [0u64; 3];
    for (slot, v) in out.iter_mut().zip(values) {
        *slot = u64::try_from(v).map_err(|_| MimicError::NegativeValue(v))?;
    }
    Ok(out)
}

impl Mimic3Spec {
    pub fn new(
        terminals: [VertexId; 3],
        outgoing: [i64; 3],
        incoming: [i64; 3],
    ) -> Result<Self, MimicError> {
        Ok(Self {
            terminals,
            outgoing: nonnegative(outgoing)?,
            incoming: nonnegative(incoming)?,
        })
    }

    pub fn from_table(table: &CutTable) -> Result<Self, MimicError> {
        if table.mode() != CutMode::Full {
            return Err(MimicError::WrongMode {
                expected: CutMode::Full,
                got: table.mode(),
            });
        }
        let q = table.terminals();
        if q.len() != 3 {
            return Err(MimicError::TerminalCount {
                expected: 3,
                got: q.len(),
            });
        }
        let get = |m: u32| {
            table
                .get(m)
                .ok_or(MimicError::Flow(crate::flow::FlowError::MissingEntry(m)))
        };
        let mut spec = Self {
            terminals: [q.get(0), q.get(1), q.get(2)],
            outgoing: [0; 3],
            incoming: [0; 3],
        };
        for i in 0..3 {
            spec.outgoing[i] = get(1 << i)?;
            spec.incoming[i] = get(0b111 & !(1 << i))?;
        }
        Ok(spec)
    }

    pub fn to_table(&self) -> Result<CutTable, MimicError> {
        let q = TerminalSet::new(self.terminals.to_vec())?;
        let mut t = CutTable::new(q, CutMode::Full)?;
        for i in 0..3 {
            t.insert(1 << i, self.outgoing[i]);
            t.insert(0b111 & !(1 << i), self.incoming[i]);
        }
        Ok(t)
    }
}

/// The star on a fresh hub `d`: `q -> d` carries `q -/-> rest` and `d -> q`
/// carries `rest -/-> q`. Edges come in the order `(a->d, d->a, b->d, ...)`.
pub fn build_mimic3(spec: &Mimic3Spec, ids: &mut FreshIds) -> Result<FlowNetwork, MimicError> {
    if !check_three_way(&spec.to_table()?)? {
        return Err(MimicError::InconsistentTable);
    }
    let hub = ids.vertex();
    let mut net = FlowNetwork::new();
    for i in 0..3 {
        let q = spec.terminals[i];
        net.add_edge(ids.edge(), q, hub, spec.outgoing[i])?;
        net.add_edge(ids.edge(), hub, q, spec.incoming[i])?;
    }
    Ok(net)
}

/// Two terminals need only the antiparallel pair `a -> b`, `b -> a`.
pub fn build_mimic2(
    terminals: [VertexId; 2],
    forward: u64,
    backward: u64,
    ids: &mut FreshIds,
) -> Result<FlowNetwork, MimicError> {
    let [a, b] = terminals;
    let mut net = FlowNetwork::new();
    net.add_edge(ids.edge(), a, b, forward)?;
    net.add_edge(ids.edge(), b, a, backward)?;
    Ok(net)
}

/// Mimic of `net` on at most three terminals: empty for zero or one
/// terminal, the antiparallel pair for two, the star for three.
pub fn build_small_mimic(
    net: &FlowNetwork,
    terminals: &[VertexId],
    ids: &mut FreshIds,
) -> Result<FlowNetwork, MimicError> {
    match terminals.len() {
        0 => Ok(FlowNetwork::new()),
        1 => {
            net.require_vertex(terminals[0])?;
            let mut out = FlowNetwork::new();
            out.add_vertex(terminals[0]);
            Ok(out)
        }
        2 => {
            let q = TerminalSet::new(terminals.to_vec())?;
            let t = cut_table(net, &q, CutMode::Full)?;
            build_mimic2(
                [terminals[0], terminals[1]],
                t.get(0b01).unwrap_or(0),
                t.get(0b10).unwrap_or(0),
                ids,
            )
        }
        3 => {
            let q = TerminalSet::new(terminals.to_vec())?;
            let t = cut_table(net, &q, CutMode::Full)?;
            build_mimic3(&Mimic3Spec::from_table(&t)?, ids)
        }
        got => Err(MimicError::TerminalCount { expected: 3, got }),
    }
}

/// Triangle mimic of an undirected 3-terminal network, with every capacity
/// doubled so halves stay integral.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UndirectedTriangle {
    pub network: FlowNetwork,
    pub scale: u64,
}

/// `cuts[i]` is `q_i -/-> rest`. The pair `(i, j)` gets doubled capacity
/// `cuts[i] + cuts[j] - cuts[l]` in both directions.
pub fn build_mimic3_undirected(
    terminals: [VertexId; 3],
    cuts: [u64; 3],
    ids: &mut FreshIds,
) -> Result<UndirectedTriangle, MimicError> {
    const NAMES: [&str; 3] = ["ab", "ac", "bc"];
    let pairs = [(0, 1, 2), (0, 2, 1), (1, 2, 0)];
    let mut net = FlowNetwork::new();
    for (name, (i, j, l)) in NAMES.into_iter().zip(pairs) {
        let value = cuts[i] as i64 + cuts[j] as i64 - cuts[l] as i64;
        if value < 0 {
            return Err(MimicError::NegativeCapacity { edge: name, value });
        }
        net.add_edge(ids.edge(), terminals[i], terminals[j], value as u64)?;
        net.add_edge(ids.edge(), terminals[j], terminals[i], value as u64)?;
    }
    Ok(UndirectedTriangle {
        network: net,
        scale: 2,
    })
}

/// Replaces two mimics hanging on the same terminals by one: their union is
/// cut once more and rebuilt at the small size.
pub fn merge_mimics(
    m1: &FlowNetwork,
    m2: &FlowNetwork,
    shared: &[VertexId],
    ids: &mut FreshIds,
) -> Result<FlowNetwork, MimicError> {
    let shared_set: BTreeSet<VertexId> = shared.iter().copied().collect();
    for &q in shared {
        if !m1.contains_vertex(q) || !m2.contains_vertex(q) {
            return Err(MimicError::MissingTerminal(q));
        }
    }
    if let Some(&v) = m1
        .vertex_set()
        .intersection(m2.vertex_set())
        .find(|v| !shared_set.contains(v))
    {
        return Err(MimicError::TerminalMismatch(v));
    }
    let union = FlowNetwork::union(m1, m2)?;
    build_small_mimic(&union, shared, ids)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testkit::{oracle_cut_table, random_network};

    fn v(i: u32) -> VertexId {
        VertexId(i)
    }

    #[test]
    fn path_star_capacities() {
        let net = FlowNetwork::from_arcs(&[(0, 1, 2), (1, 2, 2)]).unwrap();
        let q = TerminalSet::new(vec![v(0), v(1), v(2)]).unwrap();
        let t = oracle_cut_table(&net, &q, CutMode::Full).unwrap();
        let mut ids = FreshIds::new(10, 10);
        let star = build_mimic3(&Mimic3Spec::from_table(&t).unwrap(), &mut ids).unwrap();
        let caps: Vec<u64> = star.edges().map(|e| e.capacity).collect();
        assert_eq!(caps, vec![2, 0, 2, 2, 0, 2]);
        assert_eq!(star.num_vertices(), 4);
        assert_eq!(oracle_cut_table(&star, &q, CutMode::Full).unwrap(), t);
    }

    #[test]
    fn zero_table_gives_zero_star() {
        let spec = Mimic3Spec::new([v(0), v(1), v(2)], [0; 3], [0; 3]).unwrap();
        let star = build_mimic3(&spec, &mut FreshIds::new(3, 0)).unwrap();
        assert!(star.edges().all(|e| e.capacity == 0));
        assert_eq!(star.num_edges(), 6);
    }

    #[test]
    fn negative_value_rejected() {
        assert!(matches!(
            Mimic3Spec::new([v(0), v(1), v(2)], [1, -1, 0], [0; 3]),
            Err(MimicError::NegativeValue(-1))
        ));
    }

    #[test]
    fn inconsistent_spec_rejected() {
        let spec = Mimic3Spec::new([v(0), v(1), v(2)], [5, 1, 1], [1, 1, 1]).unwrap();
        assert_eq!(
            build_mimic3(&spec, &mut FreshIds::new(3, 0)),
            Err(MimicError::InconsistentTable)
        );
    }

    #[test]
    fn random_stars_preserve_tables() {
        for seed in 0..60 {
            let net = random_network(seed, 8, 0.35, 20);
            let q = TerminalSet::new(vec![v(0), v(3), v(5)]).unwrap();
            let t = oracle_cut_table(&net, &q, CutMode::Full).unwrap();
            let mut ids = FreshIds::after(&net);
            let star = build_mimic3(&Mimic3Spec::from_table(&t).unwrap(), &mut ids).unwrap();
            assert_eq!(oracle_cut_table(&star, &q, CutMode::Full).unwrap(), t);
        }
    }

    #[test]
    fn two_terminal_pair() {
        let net = FlowNetwork::from_arcs(&[(0, 1, 4), (1, 2, 3), (2, 0, 6)]).unwrap();
        let m = build_small_mimic(&net, &[v(0), v(2)], &mut FreshIds::after(&net)).unwrap();
        let caps: Vec<u64> = m.edges().map(|e| e.capacity).collect();
        assert_eq!(caps, vec![3, 6]);
    }

    #[test]
    fn undirected_unit_star_gives_half_edges() {
        let tri =
            build_mimic3_undirected([v(0), v(1), v(2)], [1, 1, 1], &mut FreshIds::new(0, 0))
                .unwrap();
        assert_eq!(tri.scale, 2);
        assert!(tri.network.edges().all(|e| e.capacity == 1));
        let zero =
            build_mimic3_undirected([v(0), v(1), v(2)], [0, 0, 0], &mut FreshIds::new(0, 0))
                .unwrap();
        assert!(zero.network.edges().all(|e| e.capacity == 0));
    }

    #[test]
    fn undirected_triangle_matches_rescaled_cuts() {
        for seed in 0..40 {
            let directed = random_network(seed, 7, 0.3, 9);
            // Symmetrize: every arc gets a twin in the other direction.
            let mut net = directed.clone();
            let mut ids = FreshIds::after(&directed);
            for e in directed.edges() {
                net.add_edge(ids.edge(), e.head, e.tail, e.capacity).unwrap();
            }
            let q = TerminalSet::new(vec![v(0), v(1), v(2)]).unwrap();
            let t = oracle_cut_table(&net, &q, CutMode::Full).unwrap();
            let cuts = [t.get(1).unwrap(), t.get(2).unwrap(), t.get(4).unwrap()];
            let tri = build_mimic3_undirected([v(0), v(1), v(2)], cuts, &mut ids).unwrap();
            let out = oracle_cut_table(&tri.network, &q, CutMode::Full).unwrap();
            for (mask, value) in t.entries() {
                assert_eq!(out.get(mask), Some(value * tri.scale));
            }
        }
    }

    #[test]
    fn merge_with_zero_mimic_is_identity() {
        let net = random_network(3, 8, 0.4, 20);
        let q = [v(0), v(1), v(2)];
        let mut ids = FreshIds::after(&net);
        let x = build_small_mimic(&net, &q, &mut ids).unwrap();
        let zero = build_mimic3(
            &Mimic3Spec::new(q, [0; 3], [0; 3]).unwrap(),
            &mut ids,
        )
        .unwrap();
        let merged = merge_mimics(&x, &zero, &q, &mut ids).unwrap();
        let ts = TerminalSet::new(q.to_vec()).unwrap();
        assert_eq!(
            oracle_cut_table(&merged, &ts, CutMode::Full).unwrap(),
            oracle_cut_table(&x, &ts, CutMode::Full).unwrap()
        );
        assert!(merged.num_vertices() <= 4);
    }

    #[test]
    fn merge_identical_stars_doubles_table() {
        let net = random_network(11, 8, 0.4, 20);
        let q = [v(0), v(1), v(2)];
        let ts = TerminalSet::new(q.to_vec()).unwrap();
        let mut ids = FreshIds::after(&net);
        let a = build_small_mimic(&net, &q, &mut ids).unwrap();
        let b = build_small_mimic(&net, &q, &mut ids).unwrap();
        let merged = merge_mimics(&a, &b, &q, &mut ids).unwrap();
        let single = oracle_cut_table(&a, &ts, CutMode::Full).unwrap();
        let union = FlowNetwork::union(&a, &b).unwrap();
        let doubled = oracle_cut_table(&union, &ts, CutMode::Full).unwrap();
        assert_eq!(oracle_cut_table(&merged, &ts, CutMode::Full).unwrap(), doubled);
        // Two stars on separate hubs cut independently, so every entry doubles.
        for (mask, value) in single.entries() {
            assert_eq!(doubled.get(mask), Some(2 * value));
        }
        assert!(merged.num_vertices() <= 4);
    }

    #[test]
    fn merge_rejects_foreign_shared_vertex() {
        let a = FlowNetwork::from_arcs(&[(0, 1, 1), (1, 5, 1)]).unwrap();
        let b = FlowNetwork::from_arcs(&[(0, 5, 1)]).unwrap();
        let mut c = FlowNetwork::new();
        c.add_edge(crate::flow::EdgeId(9), v(0), v(1), 1).unwrap();
        c.add_edge(crate::flow::EdgeId(8), v(1), v(5), 1).unwrap();
        assert!(matches!(
            merge_mimics(&a, &c, &[v(0), v(1)], &mut FreshIds::new(10, 10)),
            Err(MimicError::TerminalMismatch(_))
        ));
        assert!(matches!(
            merge_mimics(&a, &b, &[v(0), v(1)], &mut FreshIds::new(10, 10)),
            Err(MimicError::MissingTerminal(_))
        ));
    }
}
