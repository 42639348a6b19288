//! Shared helpers for integration tests: seeded random graphs.
#![allow(dead_code)] // each test binary uses its own subset

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use randic::graph::Graph;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform random recursive tree on `n` vertices.
pub fn random_tree(rng: &mut ChaCha8Rng, n: usize) -> Graph {
    let edges = (1..n as u32).map(|v| (rng.gen_range(0..v), v)).collect::<Vec<_>>();
    Graph::from_edges(n, edges).unwrap()
}

/// Connected graph: a random tree plus `extra` random chords.
pub fn random_connected(rng: &mut ChaCha8Rng, n: usize, extra: usize) -> Graph {
    let mut edges: Vec<(u32, u32)> = (1..n as u32).map(|v| (rng.gen_range(0..v), v)).collect();
    for _ in 0..extra {
        let u = rng.gen_range(0..n as u32);
        let v = rng.gen_range(0..n as u32);
        if u != v {
            edges.push((u.min(v), u.max(v)));
        }
    }
    Graph::from_edges(n, edges).unwrap()
}

/// Erdos-Renyi style graph, possibly disconnected.
pub fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n as u32 {
        for v in u + 1..n as u32 {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges).unwrap()
}
