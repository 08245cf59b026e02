use proptest::prelude::*;

use minorflow::flow::{
    check_external_realizable, cut_table, max_flow, min_cut_value, route_external_flow,
    verify_flow, CutMode, ExternalFlowDemand, FlowNetwork, FreshIds, TerminalSet, VertexId,
};
use minorflow::mimic::{
    build_mimic3, build_mimic4_single_source, Mimic3Spec, Mimic4SSSpec,
};
use minorflow::testkit::{oracle_max_flow, oracle_min_cut, random_network};

fn v(i: u32) -> VertexId {
    VertexId(i)
}

fn network() -> impl Strategy<Value = FlowNetwork> {
    (any::<u64>(), 4u32..13, 0.1f64..0.7).prop_map(|(seed, n, p)| random_network(seed, n, p, 20))
}

/// Balanced demand on `k` terminals with entries in `-bound..=bound`.
fn demand(k: usize, bound: i64) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-bound..=bound, k - 1).prop_map(|mut x| {
        let rest: i64 = x.iter().sum();
        x.push(-rest);
        x
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn max_flow_equals_min_cut_and_oracle(net in network(), a in 0u32..4, b in 0u32..4) {
        prop_assume!(a != b);
        let (s, t) = (v(a), v(b));
        let r = max_flow(&net, s, t).unwrap();
        prop_assert_eq!(r.value, min_cut_value(&net, &[s], &[t]).unwrap());
        prop_assert_eq!(r.value, oracle_max_flow(&net, s, t));
        prop_assert_eq!(net.cut_capacity(&r.source_side), r.value);
        let x = r.value as i64;
        prop_assert!(verify_flow(&net, &[s, t], &[x, -x], &r.flow).is_valid());
    }

    #[test]
    fn cuts_grow_with_the_sink_side(net in network()) {
        let s = [v(0)];
        let small = oracle_min_cut(&net, &s, &[v(1)]).unwrap();
        let large = oracle_min_cut(&net, &s, &[v(1), v(2)]).unwrap();
        prop_assert!(small <= large);
        prop_assert_eq!(min_cut_value(&net, &s, &[v(1), v(2)]).unwrap(), large);
    }

    #[test]
    fn realizability_verdict_matches_routing(net in network(), x in demand(3, 12)) {
        let q = [v(0), v(1), v(2)];
        let table = cut_table(&net, &TerminalSet::new(q.to_vec()).unwrap(), CutMode::Full).unwrap();
        let verdict = check_external_realizable(&table, &ExternalFlowDemand::new(x.clone()).unwrap()).unwrap();
        let routed = route_external_flow(&net, &q, &x);
        prop_assert_eq!(verdict, routed.is_ok());
        if let Ok(f) = routed {
            prop_assert!(verify_flow(&net, &q, &x, &f).is_valid());
        }
    }

    #[test]
    fn single_source_verdict_matches_routing(
        net in network(),
        sinks in prop::collection::vec(0i64..=10, 3),
    ) {
        let q = [v(0), v(1), v(2), v(3)];
        let total: i64 = sinks.iter().sum();
        let mut x = vec![total];
        x.extend(sinks.iter().map(|d| -d));
        let terms = TerminalSet::with_source(q.to_vec(), 0).unwrap();
        let table = cut_table(&net, &terms, CutMode::SingleSource).unwrap();
        let d = ExternalFlowDemand::single_source(x.clone(), 0).unwrap();
        let verdict = check_external_realizable(&table, &d).unwrap();
        prop_assert_eq!(verdict, route_external_flow(&net, &q, &x).is_ok());
    }

    #[test]
    fn mimic3_transfers_realizability(net in network(), xs in prop::collection::vec(demand(3, 15), 8)) {
        let q = TerminalSet::new(vec![v(0), v(1), v(2)]).unwrap();
        let table = cut_table(&net, &q, CutMode::Full).unwrap();
        let star = build_mimic3(&Mimic3Spec::from_table(&table).unwrap(), &mut FreshIds::after(&net)).unwrap();
        for x in xs {
            let on_net = route_external_flow(&net, q.as_slice(), &x).is_ok();
            let on_star = route_external_flow(&star, q.as_slice(), &x).is_ok();
            prop_assert_eq!(on_net, on_star);
        }
    }

    #[test]
    fn mimic4_transfers_single_source_realizability(
        net in network(),
        xs in prop::collection::vec(prop::collection::vec(0i64..=10, 3), 8),
    ) {
        let q = TerminalSet::with_source(vec![v(0), v(1), v(2), v(3)], 0).unwrap();
        let table = cut_table(&net, &q, CutMode::SingleSource).unwrap();
        let spec = Mimic4SSSpec::from_table(&table).unwrap();
        let (m, _) = build_mimic4_single_source(&spec, &mut FreshIds::after(&net)).unwrap();
        let mimic_table = cut_table(&m, &q, CutMode::SingleSource).unwrap();
        prop_assert_eq!(&mimic_table, &table);
        for sinks in xs {
            let mut x = vec![sinks.iter().sum::<i64>()];
            x.extend(sinks.iter().map(|d| -d));
            let d = ExternalFlowDemand::single_source(x.clone(), 0).unwrap();
            prop_assert_eq!(
                check_external_realizable(&table, &d).unwrap(),
                route_external_flow(&m, q.as_slice(), &x).is_ok()
            );
        }
    }
}

#[test]
fn oracle_agrees_with_dinic_on_1000_networks() {
    for seed in 0..1000u64 {
        let n = 2 + (seed % 14) as u32;
        let net = random_network(seed, n, 0.35, 20);
        let t = n - 1;
        assert_eq!(
            max_flow(&net, v(0), v(t)).unwrap().value,
            oracle_max_flow(&net, v(0), v(t)),
            "seed {seed}"
        );
    }
}
