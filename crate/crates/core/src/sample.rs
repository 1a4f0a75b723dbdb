//! Seeded random graphs for audits and test corpora.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::Graph;

pub type SeededRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn all_pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect()
}

/// Uniform graph with exactly `m` edges on `n` vertices.
pub fn random_gnm<R: Rng>(rng: &mut R, n: usize, m: usize) -> Graph {
    let mut pairs = all_pairs(n);
    assert!(m <= pairs.len(), "too many edges requested");
    let (chosen, _) = pairs.partial_shuffle(rng, m);
    Graph::from_edges(n, chosen).expect("distinct pairs")
}

/// Each pair present independently with probability `density`.
pub fn random_gnp<R: Rng>(rng: &mut R, n: usize, density: f64) -> Graph {
    let edges: Vec<_> = all_pairs(n).into_iter().filter(|_| rng.gen_bool(density)).collect();
    Graph::from_edges(n, &edges).expect("distinct pairs")
}

/// Connected graph with `m >= n - 1` edges: a random recursive tree plus
/// `m - n + 1` further uniformly chosen edges.
pub fn random_connected<R: Rng>(rng: &mut R, n: usize, m: usize) -> Graph {
    assert!(n >= 1 && m + 1 >= n && m <= n * (n - 1) / 2, "no connected graph with n = {n}, m = {m}");
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut edges = Vec::with_capacity(m);
    for i in 1..n {
        let parent = order[rng.gen_range(0..i)];
        let (u, v) = (parent.min(order[i]), parent.max(order[i]));
        edges.push((u, v));
    }
    let mut rest: Vec<_> = all_pairs(n).into_iter().filter(|e| !edges.contains(e)).collect();
    let (extra, _) = rest.partial_shuffle(rng, m + 1 - n);
    edges.extend_from_slice(extra);
    Graph::from_edges(n, &edges).expect("distinct pairs")
}

/// Two connected graphs sharing `n` (drawn from `min_n..=max_n`) and `m`.
pub fn random_connected_pair<R: Rng>(rng: &mut R, min_n: usize, max_n: usize) -> (Graph, Graph) {
    let n = rng.gen_range(min_n..=max_n);
    let m = rng.gen_range(n.saturating_sub(1)..=n * (n - 1) / 2);
    (random_connected(rng, n, m), random_connected(rng, n, m))
}
