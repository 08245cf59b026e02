//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any
//! failure.

use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use minorflow::decomp::{
    check_spqr_axioms, face_condition_violations, is_planar, reassemble_spqr, refine, spqr,
    DecompositionTree, Label, SimpleGraph,
};
use minorflow::flow::{
    cut_table, verify_flow, CutMode, FlowNetwork, FreshIds, TerminalSet, VertexId,
};
use minorflow::mimic::{
    build_mimic3, build_mimic4_single_source, build_mimic_general, check_four_way,
    check_three_way, Mimic3Spec, Mimic4SSSpec,
};
use minorflow::solver::{
    max_flow_decomposed, max_flow_decomposed_traced, max_flow_family, MinorFamily,
};
use minorflow::testkit::{
    audit_step_values, gen_instance, oracle_cut_table, oracle_max_flow, random_network, Family,
    GenConfig,
};

type Outcome = Result<String, String>;

/// Random network on `n` in `lo..=12` vertices with `k` distinct terminals.
fn small_instance(seed: u64, lo: u32, k: usize) -> (FlowNetwork, Vec<VertexId>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    let n = rng.gen_range(lo..=12);
    let p = rng.gen_range(0.15..0.6);
    let net = random_network(seed, n, p, 20);
    let mut vs: Vec<VertexId> = net.vertices().collect();
    vs.shuffle(&mut rng);
    vs.truncate(k);
    (net, vs)
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    for seed in 0..500 {
        let (net, q) = small_instance(seed, 3, 3);
        let terms = TerminalSet::new(q).map_err(|e| e.to_string())?;
        let table = cut_table(&net, &terms, CutMode::Full).map_err(|e| e.to_string())?;
        let spec = Mimic3Spec::from_table(&table).map_err(|e| format!("seed {seed}: {e}"))?;
        let mut ids = FreshIds::after(&net);
        let m = build_mimic3(&spec, &mut ids).map_err(|e| format!("seed {seed}: {e}"))?;
        ensure(m.num_vertices() == 4 && m.num_edges() == 6, || {
            format!("seed {seed}: {} vertices, {} edges", m.num_vertices(), m.num_edges())
        })?;
        let want = oracle_cut_table(&net, &terms, CutMode::Full).map_err(|e| e.to_string())?;
        let got = oracle_cut_table(&m, &terms, CutMode::Full).map_err(|e| e.to_string())?;
        ensure(want == got, || format!("seed {seed}: cut tables differ"))?;
    }
    let t = start.elapsed();
    ensure(t < Duration::from_secs(60), || format!("took {t:?}"))?;
    Ok(format!("500 networks, 6/6 cuts exact, {t:.2?}"))
}

fn criterion_2() -> Outcome {
    for seed in 0..500 {
        let (net, q) = small_instance(seed + 1000, 4, 4);
        let terms = TerminalSet::with_source(q, 0).map_err(|e| e.to_string())?;
        let table = cut_table(&net, &terms, CutMode::SingleSource).map_err(|e| e.to_string())?;
        let spec = Mimic4SSSpec::from_table(&table).map_err(|e| e.to_string())?;
        let mut ids = FreshIds::after(&net);
        let (m, _) = build_mimic4_single_source(&spec, &mut ids)
            .map_err(|e| format!("seed {seed}: {e}"))?;
        ensure(m.num_vertices() == 5 && m.num_edges() == 7, || {
            format!("seed {seed}: {} vertices, {} edges", m.num_vertices(), m.num_edges())
        })?;
        let want =
            oracle_cut_table(&net, &terms, CutMode::SingleSource).map_err(|e| e.to_string())?;
        let got = oracle_cut_table(&m, &terms, CutMode::SingleSource).map_err(|e| e.to_string())?;
        ensure(want == got, || format!("seed {seed}: single-source tables differ"))?;
    }
    // Worked example: table derived from its seed network by enumeration.
    let seed_net =
        FlowNetwork::from_arcs(&[(0, 1, 4), (0, 2, 3), (0, 3, 2), (1, 2, 1), (2, 3, 1)])
            .map_err(|e| e.to_string())?;
    let q: Vec<VertexId> = (0..4).map(VertexId).collect();
    let terms = TerminalSet::with_source(q, 0).map_err(|e| e.to_string())?;
    let table =
        oracle_cut_table(&seed_net, &terms, CutMode::SingleSource).map_err(|e| e.to_string())?;
    let spec = Mimic4SSSpec::from_table(&table).map_err(|e| e.to_string())?;
    ensure(spec.values == [4, 4, 3, 7, 7, 6, 9], || {
        format!("worked example table {:?}", spec.values)
    })?;
    let (m, _) = build_mimic4_single_source(&spec, &mut FreshIds::new(4, 5))
        .map_err(|e| e.to_string())?;
    let caps: Vec<u64> = m.edges().map(|e| e.capacity).collect();
    ensure(caps == [4, 3, 2, 1, 1, 1, 1], || format!("worked example caps {caps:?}"))?;
    Ok("500 networks, 7/7 cuts exact; worked example reproduced".into())
}

fn criterion_3() -> Outcome {
    for seed in 0..500 {
        let (net, q) = small_instance(seed + 2000, 3, 3);
        let terms = TerminalSet::new(q).map_err(|e| e.to_string())?;
        let table = oracle_cut_table(&net, &terms, CutMode::Full).map_err(|e| e.to_string())?;
        ensure(check_three_way(&table).map_err(|e| e.to_string())?, || {
            format!("three-way fails at seed {seed}")
        })?;
    }
    for seed in 0..500 {
        let (net, q) = small_instance(seed + 3000, 4, 4);
        let full = TerminalSet::new(q.clone()).map_err(|e| e.to_string())?;
        let single = TerminalSet::with_source(q, 0).map_err(|e| e.to_string())?;
        for (terms, mode) in [(full, CutMode::Full), (single, CutMode::SingleSource)] {
            let table = oracle_cut_table(&net, &terms, mode).map_err(|e| e.to_string())?;
            ensure(check_four_way(&table).map_err(|e| e.to_string())?, || {
                format!("four-way ({mode}) fails at seed {seed}")
            })?;
        }
    }
    Ok("three-way on 500 tables, four-way on 500 networks (both modes)".into())
}

fn criterion_4() -> Outcome {
    let mut largest = [0usize; 3];
    for k in 2..=4usize {
        for seed in 0..200 {
            let (net, q) = small_instance(seed + 4000 + 1000 * k as u64, 4, k);
            let terms = TerminalSet::new(q).map_err(|e| e.to_string())?;
            let mut ids = FreshIds::after(&net);
            let m = build_mimic_general(&net, &terms, &mut ids).map_err(|e| e.to_string())?;
            let bound = 1usize << ((1 << k) - 2);
            ensure(m.num_vertices() <= bound, || {
                format!("k={k} seed {seed}: {} vertices > {bound}", m.num_vertices())
            })?;
            let want = oracle_cut_table(&net, &terms, CutMode::Full).map_err(|e| e.to_string())?;
            let got = cut_table(&m, &terms, CutMode::Full).map_err(|e| e.to_string())?;
            ensure(want == got, || format!("k={k} seed {seed}: cut tables differ"))?;
            largest[k - 2] = largest[k - 2].max(m.num_vertices());
        }
    }
    Ok(format!(
        "600 networks exact; largest outputs {}/{}/{} vertices for k=2/3/4",
        largest[0], largest[1], largest[2]
    ))
}

fn terminals_for(net: &FlowNetwork, seed: u64) -> (VertexId, VertexId) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x7e57);
    let vs: Vec<VertexId> = net.vertices().collect();
    let pick: Vec<_> = vs.choose_multiple(&mut rng, 2).copied().collect();
    (pick[0], pick[1])
}

fn check_solution(
    net: &FlowNetwork,
    s: VertexId,
    t: VertexId,
    got: Result<(u64, minorflow::flow::FlowAssignment), minorflow::solver::SolveError>,
    what: &str,
) -> Result<(), String> {
    let (value, flow) = got.map_err(|e| format!("{what}: {e}"))?;
    let want = oracle_max_flow(net, s, t);
    ensure(value == want, || format!("{what}: value {value}, oracle {want}"))?;
    let x = value as i64;
    let report = verify_flow(net, &[s, t], &[x, -x], &flow);
    ensure(report.is_valid(), || format!("{what}: {} flow violations", report.violations.len()))
}

fn criterion_5() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for (family, mf) in [
        (Family::K33Free, MinorFamily::K33Free),
        (Family::K5Free, MinorFamily::K5Free),
    ] {
        for seed in 0..200u64 {
            let n = rng.gen_range(2..=60);
            let (net, tree) = gen_instance(&GenConfig::new(family, n, seed));
            let (s, t) = terminals_for(&net, seed);
            let what = format!("{family:?} tree seed {seed}");
            check_solution(&net, s, t, max_flow_decomposed(&net, &tree, s, t), &what)?;
        }
        for seed in 0..100u64 {
            let n = rng.gen_range(2..=60);
            let (net, _) = gen_instance(&GenConfig::new(family, n, seed + 10_000));
            let (s, t) = terminals_for(&net, seed);
            let what = format!("{family:?} decomposer seed {seed}");
            check_solution(&net, s, t, max_flow_family(&net, mf, s, t), &what)?;
        }
    }
    let t = start.elapsed();
    ensure(t < Duration::from_secs(300), || format!("took {t:?}"))?;
    Ok(format!("600 instances exact and verified, {t:.2?}"))
}

fn criterion_6() -> Outcome {
    let mut steps = 0;
    for seed in 0..50u64 {
        let family = [Family::K33Free, Family::K5Free][seed as usize % 2];
        let n = 10 + (seed as usize * 7) % 21;
        let (net, tree) = gen_instance(&GenConfig::new(family, n, seed + 20_000));
        let (s, t) = terminals_for(&net, seed);
        let (_, _, trace) =
            max_flow_decomposed_traced(&net, &tree, s, t).map_err(|e| e.to_string())?;
        ensure(audit_step_values(&trace), || format!("audit fails at seed {seed}"))?;
        steps += trace.steps.len();
    }
    Ok(format!("50 instances, {steps} audited steps"))
}

/// A random cycle through all vertices plus random chords.
fn biconnected_graph(seed: u64) -> SimpleGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xb1c0);
    let n = rng.gen_range(3..=30u32);
    let mut order: Vec<u32> = (0..n).collect();
    order.shuffle(&mut rng);
    let mut edges: Vec<(u32, u32)> = (0..n as usize)
        .map(|i| (order[i], order[(i + 1) % n as usize]))
        .collect();
    let chords = rng.gen_range(0..=2 * n);
    for _ in 0..chords {
        let (a, b) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if a != b {
            edges.push((a, b));
        }
    }
    let edges: Vec<(u32, u32)> = edges.into_iter().map(|(a, b)| (a.min(b), a.max(b))).collect();
    SimpleGraph::from_edges(&edges)
}

fn network_of(g: &SimpleGraph) -> FlowNetwork {
    let arcs: Vec<(u32, u32, u64)> = g.edges().iter().map(|&(a, b)| (a.0, b.0, 1)).collect();
    FlowNetwork::from_arcs(&arcs).expect("simple graph")
}

fn refine_checks(tree: &DecompositionTree, what: &str) -> Result<(), String> {
    let once = refine(tree).map_err(|e| format!("{what}: {e}"))?;
    let twice = refine(&once).map_err(|e| format!("{what}: {e}"))?;
    ensure(once == twice, || format!("{what}: refine is not idempotent"))?;
    let bad = face_condition_violations(&once);
    ensure(bad.is_empty(), || format!("{what}: non-face triangles {bad:?}"))
}

fn criterion_7() -> Outcome {
    let mut kinds = [0usize; 4];
    for seed in 0..200u64 {
        let g = biconnected_graph(seed);
        let t = spqr(&g).map_err(|e| format!("seed {seed}: {e}"))?;
        let errs = check_spqr_axioms(&t);
        ensure(errs.is_empty(), || format!("seed {seed}: {errs:?}"))?;
        ensure(reassemble_spqr(&t) == g.edges(), || format!("seed {seed}: reassembly differs"))?;
        for node in &t.nodes {
            kinds[node.kind as usize] += 1;
        }
        let label = if is_planar(&g) { Label::Planar } else { Label::BoundedTW };
        refine_checks(&DecompositionTree::single(network_of(&g), label), &format!("graph {seed}"))?;
        let n = 3 + seed as usize % 28;
        let family = [Family::Planar, Family::K33Free, Family::K5Free][seed as usize % 3];
        let (_, tree) = gen_instance(&GenConfig::new(family, n, seed + 30_000));
        refine_checks(&tree, &format!("{family:?} tree {seed}"))?;
    }
    Ok(format!(
        "200 graphs; node kinds S/P/R/Q = {}/{}/{}/{}; 400 trees refined",
        kinds[0], kinds[1], kinds[2], kinds[3]
    ))
}

fn criterion_8() -> Outcome {
    let start = Instant::now();
    let (net, tree) = gen_instance(&GenConfig::new(Family::K5Free, 100_000, 8));
    let generated = start.elapsed();
    let (s, t) = terminals_for(&net, 8);
    let (value, flow) = max_flow_decomposed(&net, &tree, s, t).map_err(|e| e.to_string())?;
    let x = value as i64;
    let report = verify_flow(&net, &[s, t], &[x, -x], &flow);
    ensure(report.is_valid(), || "flow fails verification".into())?;
    let plain = minorflow::flow::max_flow(&net, s, t).map_err(|e| e.to_string())?;
    ensure(plain.value == value, || format!("value {value}, direct {}", plain.value))?;
    let total = start.elapsed();
    ensure(total < Duration::from_secs(300), || format!("took {total:?}"))?;
    Ok(format!(
        "n=100000, {} edges, {} components, value {value}, {total:.2?} (generation {generated:.2?})",
        net.num_edges(),
        tree.num_components()
    ))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("mimic3 exactness", criterion_1),
        ("mimic4 exactness", criterion_2),
        ("cut inequalities", criterion_3),
        ("general mimic", criterion_4),
        ("end-to-end correctness", criterion_5),
        ("step-value invariance", criterion_6),
        ("SPQR and refinement", criterion_7),
        ("scaling", criterion_8),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("PASS criterion {} ({name}): {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {} ({name}): {why}", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
