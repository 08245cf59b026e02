use minorflow::decomp::{DecompositionTree, Label};
use minorflow::flow::{max_flow, verify_flow, FlowNetwork, VertexId};
use minorflow::solver::{
    locate_terminal_path, max_flow_decomposed, max_flow_decomposed_traced, max_flow_family,
    MinorFamily, Phase, StepKind,
};
use minorflow::testkit::{audit_step_values, gen_instance, oracle_max_flow, Family, GenConfig};

fn v(i: u32) -> VertexId {
    VertexId(i)
}

fn check(net: &FlowNetwork, tree: &DecompositionTree, s: VertexId, t: VertexId) {
    let (value, flow) = max_flow_decomposed(net, tree, s, t).unwrap();
    assert_eq!(value, oracle_max_flow(net, s, t), "s={s} t={t}");
    let x = value as i64;
    let report = verify_flow(net, &[s, t], &[x, -x], &flow);
    assert!(report.is_valid(), "{:?}", report.violations);
}

fn terminals(net: &FlowNetwork, seed: u64) -> (VertexId, VertexId) {
    let n = net.num_vertices() as u64;
    let s = 1 + seed % n;
    let t = 1 + (seed * 7 + n / 2) % n;
    let t = if t == s { 1 + s % n } else { t };
    (v(s as u32), v(t as u32))
}

#[test]
fn single_component_matches_plain_max_flow() {
    let net = FlowNetwork::from_arcs(&[(1, 2, 4), (2, 3, 2), (1, 3, 1), (3, 4, 9)]).unwrap();
    let tree = DecompositionTree::single(net.clone(), Label::Planar);
    let (value, _) = max_flow_decomposed(&net, &tree, v(1), v(4)).unwrap();
    assert_eq!(value, max_flow(&net, v(1), v(4)).unwrap().value);
}

#[test]
fn generated_instances_match_oracle() {
    for family in [Family::K33Free, Family::K5Free, Family::Planar] {
        for seed in 0..40 {
            let n = 4 + (seed as usize * 13) % 57;
            let (net, tree) = gen_instance(&GenConfig::new(family, n, seed));
            let (s, t) = terminals(&net, seed);
            check(&net, &tree, s, t);
        }
    }
}

#[test]
fn family_decomposers_match_oracle() {
    for (family, mf) in [
        (Family::K33Free, MinorFamily::K33Free),
        (Family::K5Free, MinorFamily::K5Free),
    ] {
        for seed in 0..15 {
            let (net, _) = gen_instance(&GenConfig::new(family, 30, seed));
            let (s, t) = terminals(&net, seed);
            let (value, flow) = max_flow_family(&net, mf, s, t).unwrap();
            assert_eq!(value, oracle_max_flow(&net, s, t));
            let x = value as i64;
            assert!(verify_flow(&net, &[s, t], &[x, -x], &flow).is_valid());
        }
    }
}

#[test]
fn traces_pass_audit_and_mutation_fails_it() {
    let mut audited = 0;
    for seed in 0..10 {
        let (net, tree) = gen_instance(&GenConfig::new(Family::K5Free, 25, seed));
        let (s, t) = terminals(&net, seed);
        let (_, _, trace) = max_flow_decomposed_traced(&net, &tree, s, t).unwrap();
        assert!(audit_step_values(&trace));
        assert!(trace.steps.iter().any(|x| matches!(x.kind, StepKind::Restored(_))));
        // Zeroing every edge of one replaced network must change some value
        // unless that network carried nothing.
        let mut bad = trace.clone();
        let idx = bad.steps.len() / 2;
        let ids: Vec<_> = bad.steps[idx].network.edges().map(|e| e.id).collect();
        for id in ids {
            bad.steps[idx].network.set_capacity(id, 0).unwrap();
        }
        if oracle_max_flow(&trace.steps[0].network, s, t) > 0 {
            assert!(!audit_step_values(&bad));
            audited += 1;
        }
    }
    assert!(audited > 0);
}

#[test]
fn path_cases() {
    let (_, tree) = gen_instance(&GenConfig::new(Family::K5Free, 40, 2));
    let c = tree.components().next().unwrap();
    let vs: Vec<_> = c.network.vertices().collect();
    let p = locate_terminal_path(&tree, vs[0], vs[1]).unwrap();
    assert_eq!(p.components.len(), 1);
    assert!(p.is_empty());
}

#[test]
fn two_pieces_on_a_shared_edge() {
    // Two triangles glued along {2,3}; s=1 in one, t=4 in the other.
    let a = FlowNetwork::from_arcs(&[(1, 2, 3), (1, 3, 4), (2, 3, 1)]).unwrap();
    let mut b = FlowNetwork::new();
    b.add_edge(minorflow::flow::EdgeId(10), v(2), v(4), 5).unwrap();
    b.add_edge(minorflow::flow::EdgeId(11), v(3), v(4), 2).unwrap();
    let mut tree = DecompositionTree::new();
    let ca = tree.add_component(a.clone(), Label::Planar);
    let cb = tree.add_component(b.clone(), Label::Planar);
    let k = tree.add_clique(vec![v(2), v(3)]);
    tree.link(ca, k);
    tree.link(cb, k);
    let net = FlowNetwork::union(&a, &b).unwrap();
    let path = locate_terminal_path(&tree, v(1), v(4)).unwrap();
    assert_eq!(path.components, vec![ca, cb]);
    let (value, flow, trace) = max_flow_decomposed_traced(&net, &tree, v(1), v(4)).unwrap();
    assert_eq!(value, 5);
    assert!(verify_flow(&net, &[v(1), v(4)], &[5, -5], &flow).is_valid());
    assert!(audit_step_values(&trace));
    let replaced = trace
        .steps
        .iter()
        .filter(|x| matches!(x.kind, StepKind::Replaced(_)))
        .count();
    assert_eq!(replaced, 1);
}

fn edges(net: &mut FlowNetwork, next: &mut u32, arcs: &[(u32, u32, u64)]) {
    for &(a, b, c) in arcs {
        net.add_edge(minorflow::flow::EdgeId(*next), v(a), v(b), c).unwrap();
        *next += 1;
    }
}

#[test]
fn five_leaves_on_a_path_triangle_leave_one_pendant() {
    let mut id = 1;
    let mut p0 = FlowNetwork::new();
    edges(&mut p0, &mut id, &[(10, 1, 6), (10, 2, 4), (10, 3, 5), (1, 2, 2)]);
    let mut p1 = FlowNetwork::new();
    edges(&mut p1, &mut id, &[(1, 20, 3), (2, 20, 3), (3, 20, 7)]);
    let mut tree = DecompositionTree::new();
    let c0 = tree.add_component(p0.clone(), Label::Planar);
    let c1 = tree.add_component(p1.clone(), Label::Planar);
    let k = tree.add_clique(vec![v(1), v(2), v(3)]);
    tree.link(c0, k);
    tree.link(c1, k);
    let mut net = FlowNetwork::union(&p0, &p1).unwrap();
    for j in 0..5u32 {
        let x = 30 + j;
        let mut leaf = FlowNetwork::new();
        edges(
            &mut leaf,
            &mut id,
            &[(1, x, 2 + j as u64), (x, 3, 4), (3, x, 1), (x, 2, 1 + j as u64)],
        );
        net.absorb(&leaf).unwrap();
        let c = tree.add_component(leaf, Label::Planar);
        tree.link(c, k);
    }
    let path = locate_terminal_path(&tree, v(10), v(20)).unwrap();
    assert_eq!(path.components, vec![c0, c1]);
    let mut state = minorflow::solver::SolveState::new(tree.clone()).unwrap();
    minorflow::solver::phase1(&mut state, &path).unwrap();
    assert_eq!(state.pendants.len(), 1);
    assert_eq!(state.tree.num_components(), 3);
    // One replacement per leaf plus one merge per leaf after the first.
    assert_eq!(state.stack.len(), 9);
    assert!(state.stack.iter().all(|r| r.phase == Phase::I && r.installed.num_vertices() <= 4));
    check(&net, &tree, v(10), v(20));
    let (_, _, trace) = max_flow_decomposed_traced(&net, &tree, v(10), v(20)).unwrap();
    assert!(audit_step_values(&trace));
}

#[test]
fn flow_can_leave_and_reenter_the_source_side() {
    // The source side only reaches 2, but its edge 3->4 is usable by flow
    // that leaves through 2 and comes back through 3.
    let mut id = 1;
    let mut p0 = FlowNetwork::new();
    edges(&mut p0, &mut id, &[(1, 2, 5), (3, 4, 5)]);
    let mut p1 = FlowNetwork::new();
    edges(&mut p1, &mut id, &[(2, 3, 5), (4, 9, 5)]);
    let mut tree = DecompositionTree::new();
    let c0 = tree.add_component(p0.clone(), Label::Planar);
    let c1 = tree.add_component(p1.clone(), Label::Planar);
    let k = tree.add_clique(vec![v(2), v(3), v(4)]);
    tree.link(c0, k);
    tree.link(c1, k);
    let net = FlowNetwork::union(&p0, &p1).unwrap();
    assert_eq!(oracle_max_flow(&net, v(1), v(9)), 5);
    check(&net, &tree, v(1), v(9));
    let (_, _, trace) = max_flow_decomposed_traced(&net, &tree, v(1), v(9)).unwrap();
    assert!(audit_step_values(&trace));
}

#[test]
fn chain_of_planar_pieces_gives_one_record_per_hop() {
    // Four squares glued in a row along edges.
    let mut id = 1;
    let mut tree = DecompositionTree::new();
    let mut net = FlowNetwork::new();
    let mut prev = None;
    for i in 0..4u32 {
        let (a, b, c, d) = (2 * i, 2 * i + 1, 2 * i + 2, 2 * i + 3);
        let mut sq = FlowNetwork::new();
        edges(&mut sq, &mut id, &[(a, c, 3 + i as u64), (b, d, 2), (a, b, 1), (c, d, 1)]);
        if i > 0 {
            sq.add_vertex(v(a));
            sq.add_vertex(v(b));
        }
        net.absorb(&sq).unwrap();
        let comp = tree.add_component(sq, Label::Planar);
        if let Some(p) = prev {
            let k = tree.add_clique(vec![v(a), v(b)]);
            tree.link(p, k);
            tree.link(comp, k);
        }
        prev = Some(comp);
    }
    check(&net, &tree, v(0), v(9));
    let (_, _, trace) = max_flow_decomposed_traced(&net, &tree, v(0), v(9)).unwrap();
    let replaced = trace
        .steps
        .iter()
        .filter(|x| matches!(x.kind, StepKind::Replaced(_)))
        .count();
    assert_eq!(replaced, 3);
    assert!(audit_step_values(&trace));
}

#[test]
fn installed_mimics_are_small_or_verified_exact() {
    use minorflow::decomp::refine;
    use minorflow::flow::{cut_table, CutMode, TerminalSet};
    use minorflow::solver::{phase1, phase2, SolveState};
    for (i, family) in [Family::K33Free, Family::K5Free].into_iter().enumerate() {
        for seed in 0..30u64 {
            let (net, tree) = gen_instance(&GenConfig::new(family, 50, seed + 100 * i as u64));
            let (s, t) = terminals(&net, seed);
            let refined = refine(&tree).unwrap();
            let path = locate_terminal_path(&refined, s, t).unwrap();
            let mut state = SolveState::new(refined).unwrap();
            phase1(&mut state, &path).unwrap();
            phase2(&mut state, &path, s, t).unwrap();
            assert!(state.pendants.is_empty());
            for rec in &state.stack {
                let k = rec.terminals.len();
                match (rec.phase, k) {
                    (Phase::I, _) | (Phase::II, 0..=3) => {
                        assert!(rec.installed.num_vertices() <= 4, "record {}", rec.id)
                    }
                    (Phase::II, _) => {
                        let q = TerminalSet::new(rec.terminals.clone()).unwrap();
                        let want = cut_table(&rec.snapshot, &q, CutMode::Full).unwrap();
                        let got = cut_table(&rec.installed, &q, CutMode::Full).unwrap();
                        assert_eq!(want, got, "record {}", rec.id);
                        assert!(rec.installed.num_vertices() <= 1 << 14);
                    }
                }
            }
        }
    }
}
