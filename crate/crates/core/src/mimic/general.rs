use std::collections::BTreeMap;

use crate::flow::{min_cut, FlowNetwork, FreshIds, TerminalSet, VertexId};

use super::MimicError;

/// Collapses `net` onto the classes of vertices that fall on the same side of
/// every minimal minimum cut between terminal groups.
///
/// One cut is taken per nonempty proper terminal subset (the inclusion-minimal
/// source side), so there are at most `2^(2^k - 2)` classes. The class holding
/// terminal `q` keeps the id `q`; the others get fresh ids in signature order.
/// Parallel edges between classes are summed and zero sums dropped.
pub fn build_mimic_general(
    net: &FlowNetwork,
    terminals: &TerminalSet,
    ids: &mut FreshIds,
) -> Result<FlowNetwork, MimicError> {
    terminals.require_in(net)?;
    let mut signature: BTreeMap<VertexId, Vec<bool>> =
        net.vertices().map(|v| (v, Vec::new())).collect();
    for mask in 1..terminals.all_mask() {
        let sources = terminals.subset(mask);
        let sinks = terminals.subset(terminals.all_mask() & !mask);
        let (_, side) = min_cut(net, &sources, &sinks)?;
        for (v, sig) in signature.iter_mut() {
            sig.push(side.contains(v));
        }
    }
    let mut class_id: BTreeMap<&Vec<bool>, VertexId> = BTreeMap::new();
    for &q in terminals.as_slice() {
        class_id.insert(&signature[&q], q);
    }
    let mut distinct: Vec<&Vec<bool>> = signature.values().collect();
    distinct.sort();
    distinct.dedup();
    for sig in distinct {
        class_id.entry(sig).or_insert_with(|| ids.vertex());
    }
    let class_of = |v: VertexId| class_id[&signature[&v]];

    let mut caps: BTreeMap<(VertexId, VertexId), u64> = BTreeMap::new();
    for e in net.edges() {
        let (u, w) = (class_of(e.tail), class_of(e.head));
        if u != w {
            *caps.entry((u, w)).or_default() += e.capacity;
        }
    }
    let mut out = FlowNetwork::new();
    for &v in class_id.values() {
        out.add_vertex(v);
    }
    for ((u, w), c) in caps {
        if c > 0 {
            out.add_edge(ids.edge(), u, w, c)?;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flow::CutMode;
    use crate::mimic::{build_mimic3, Mimic3Spec};
    use crate::testkit::{oracle_cut_table, random_network};

    fn v(i: u32) -> VertexId {
        VertexId(i)
    }

    #[test]
    fn random_tables_preserved() {
        for k in 2..=4u32 {
            for seed in 0..25 {
                let net = random_network(seed * 7 + u64::from(k), 10, 0.3, 20);
                let q = TerminalSet::new((0..k).map(|i| v(2 * i)).collect()).unwrap();
                let m = build_mimic_general(&net, &q, &mut FreshIds::after(&net)).unwrap();
                assert!(m.num_vertices() <= 1 << ((1 << k) - 2));
                assert_eq!(
                    oracle_cut_table(&m, &q, CutMode::Full).unwrap(),
                    oracle_cut_table(&net, &q, CutMode::Full).unwrap()
                );
            }
        }
    }

    #[test]
    fn star_collapses_to_at_most_four_vertices() {
        let spec = Mimic3Spec::new([v(0), v(1), v(2)], [3, 2, 4], [2, 5, 3]).unwrap();
        let star = build_mimic3(&spec, &mut FreshIds::new(3, 0)).unwrap();
        let q = TerminalSet::new(vec![v(0), v(1), v(2)]).unwrap();
        let m = build_mimic_general(&star, &q, &mut FreshIds::new(10, 10)).unwrap();
        assert!(m.num_vertices() <= 4);
        assert_eq!(
            oracle_cut_table(&m, &q, CutMode::Full).unwrap(),
            oracle_cut_table(&star, &q, CutMode::Full).unwrap()
        );
    }

    #[test]
    fn terminals_keep_their_ids() {
        let net = FlowNetwork::from_arcs(&[(0, 1, 2), (1, 2, 2), (2, 3, 1)]).unwrap();
        let q = TerminalSet::new(vec![v(0), v(3)]).unwrap();
        let m = build_mimic_general(&net, &q, &mut FreshIds::after(&net)).unwrap();
        assert!(m.contains_vertex(v(0)) && m.contains_vertex(v(3)));
    }
}
