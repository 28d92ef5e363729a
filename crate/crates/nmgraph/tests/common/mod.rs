//! Shared helpers for the integration suites: seeded random graphs and
//! the small parameter grid the fuzz properties run over.

use nmgraph::graph::{AdjLabel, NMGraph, Params};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

/// Every admissible parameter pair with 2n + m <= max_p.
#[allow(dead_code)]
pub fn params_up_to(max_p: u32) -> Vec<Params> {
    let mut out = Vec::new();
    for n in 0..=max_p / 2 {
        for m in 0..=max_p {
            if n + m >= 1 && 2 * n + m <= max_p {
                out.push(Params::new(n, m).unwrap());
            }
        }
    }
    out
}

/// A random graph: each unordered pair is adjacent with probability
/// `density`, carrying a uniform label from the alphabet.
pub fn random_graph(rng: &mut StdRng, params: Params, order: usize, density: f64) -> NMGraph {
    let mut g = NMGraph::new(params, order).unwrap();
    for u in 0..order {
        for v in u + 1..order {
            if rng.gen_bool(density) {
                let label = rng.gen_range(1..=params.p());
                g.add_adjacency(u, v, AdjLabel::new(label, params).unwrap()).unwrap();
            }
        }
    }
    g
}

/// A uniformly labeled complete underlying graph (every pair adjacent).
#[allow(dead_code)]
pub fn random_fully_adjacent(rng: &mut StdRng, params: Params, order: usize) -> NMGraph {
    random_graph(rng, params, order, 1.0)
}

/// A random permutation of 0..n.
#[allow(dead_code)]
pub fn random_permutation(rng: &mut StdRng, n: usize) -> Vec<usize> {
    let mut perm: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        let j = rng.gen_range(0..=i);
        perm.swap(i, j);
    }
    perm
}
