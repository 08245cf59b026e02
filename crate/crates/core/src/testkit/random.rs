use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::flow::{EdgeId, FlowNetwork, VertexId};

/// Vertices `0..n`; each ordered pair gets an edge with probability `p` and a
/// capacity uniform in `1..=max_cap`.
pub fn random_network(seed: u64, n: u32, p: f64, max_cap: u64) -> FlowNetwork {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut net = FlowNetwork::new();
    let mut next = 0u32;
    for u in 0..n {
        net.add_vertex(VertexId(u));
        for w in 0..n {
            if u != w && rng.gen_bool(p) {
                let cap = rng.gen_range(1..=max_cap);
                net.add_edge(EdgeId(next), VertexId(u), VertexId(w), cap)
                    .expect("fresh edge id");
                next += 1;
            }
        }
    }
    net
}
