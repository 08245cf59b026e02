use std::collections::HashSet;

use crate::decomp::SimpleGraph;

use super::TestkitError;

/// Largest graph [`minor_free_check`] accepts.
pub const MINOR_CHECK_LIMIT: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Forbidden {
    K5,
    K33,
}

/// Whether `graph` has no `h` minor, by exhaustive contraction search.
pub fn minor_free_check(graph: &SimpleGraph, h: Forbidden) -> Result<bool, TestkitError> {
    let n = graph.num_vertices();
    if n > MINOR_CHECK_LIMIT {
        return Err(TestkitError::TooLarge {
            size: n,
            limit: MINOR_CHECK_LIMIT,
        });
    }
    let vs: Vec<_> = graph.vertices().collect();
    let mut adj = vec![0u16; n];
    for (u, w) in graph.edges() {
        let i = vs.iter().position(|&x| x == u).unwrap();
        let j = vs.iter().position(|&x| x == w).unwrap();
        adj[i] |= 1 << j;
        adj[j] |= 1 << i;
    }
    let alive = if n == 0 { 0 } else { ((1u32 << n) - 1) as u16 };
    let mut seen = HashSet::new();
    Ok(!has_minor(alive, adj, h, &mut seen))
}

fn contract(alive: &mut u16, adj: &mut [u16], keep: usize, gone: usize) {
    let merged = (adj[keep] | adj[gone]) & !(1 << keep) & !(1 << gone);
    for i in 0..adj.len() {
        if adj[i] >> gone & 1 == 1 {
            adj[i] &= !(1 << gone);
            if i != keep {
                adj[i] |= 1 << keep;
            }
        }
    }
    adj[keep] = merged;
    adj[gone] = 0;
    *alive &= !(1 << gone);
}

/// Deletes vertices of degree at most one and suppresses degree-two
/// vertices; both forbidden graphs have minimum degree three.
fn reduce(alive: &mut u16, adj: &mut [u16]) {
    loop {
        let mut changed = false;
        for v in 0..adj.len() {
            if *alive >> v & 1 == 0 {
                continue;
            }
            match adj[v].count_ones() {
                0 | 1 => {
                    for i in 0..adj.len() {
                        adj[i] &= !(1 << v);
                    }
                    adj[v] = 0;
                    *alive &= !(1 << v);
                    changed = true;
                }
                2 => {
                    let u = adj[v].trailing_zeros() as usize;
                    contract(alive, adj, u, v);
                    changed = true;
                }
                _ => {}
            }
        }
        if !changed {
            return;
        }
    }
}

fn contains_subgraph(alive: u16, adj: &[u16], h: Forbidden) -> bool {
    let verts: Vec<usize> = (0..adj.len()).filter(|&v| alive >> v & 1 == 1).collect();
    match h {
        Forbidden::K5 => {
            fn grow(cands: u16, depth: usize, adj: &[u16]) -> bool {
                if depth == 5 {
                    return true;
                }
                let mut c = cands;
                while c != 0 {
                    let v = c.trailing_zeros() as usize;
                    c &= c - 1;
                    // Only extend with higher-indexed vertices.
                    if grow(c & adj[v], depth + 1, adj) {
                        return true;
                    }
                }
                false
            }
            grow(alive, 0, adj)
        }
        Forbidden::K33 => {
            for (i, &a) in verts.iter().enumerate() {
                for (j, &b) in verts.iter().enumerate().skip(i + 1) {
                    for &c in &verts[j + 1..] {
                        let side = (1u16 << a) | (1 << b) | (1 << c);
                        let common = adj[a] & adj[b] & adj[c] & !side;
                        if common.count_ones() >= 3 {
                            return true;
                        }
                    }
                }
            }
            false
        }
    }
}

fn has_minor(
    mut alive: u16,
    mut adj: Vec<u16>,
    h: Forbidden,
    seen: &mut HashSet<(u16, Vec<u16>)>,
) -> bool {
    reduce(&mut alive, &mut adj);
    let (hv, he) = match h {
        Forbidden::K5 => (5, 10),
        Forbidden::K33 => (6, 9),
    };
    let nv = alive.count_ones() as usize;
    let ne: usize = adj.iter().map(|a| a.count_ones() as usize).sum::<usize>() / 2;
    if nv < hv || ne < he {
        return false;
    }
    if !seen.insert((alive, adj.clone())) {
        return false;
    }
    if contains_subgraph(alive, &adj, h) {
        return true;
    }
    if nv == hv {
        return false;
    }
    for u in 0..adj.len() {
        let mut nb = adj[u] & !((1u16 << (u + 1)) - 1);
        while nb != 0 {
            let w = nb.trailing_zeros() as usize;
            nb &= nb - 1;
            let (mut a2, mut adj2) = (alive, adj.clone());
            contract(&mut a2, &mut adj2, u, w);
            if has_minor(a2, adj2, h, seen) {
                return true;
            }
        }
    }
    false
}
