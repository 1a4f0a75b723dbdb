//! Shared inputs for the criterion benches.

use equienergy::sample;
use equienergy::Graph;

/// A seeded connected pair on `n` vertices with roughly twice as many edges.
pub fn connected_pair(n: usize, seed: u64) -> (Graph, Graph) {
    let m = (2 * n).clamp(n - 1, n * (n - 1) / 2);
    let mut rng = sample::rng(seed);
    (sample::random_connected(&mut rng, n, m), sample::random_connected(&mut rng, n, m))
}

/// Seeded dense random graph on `n` vertices.
pub fn random_graph(n: usize, seed: u64) -> Graph {
    sample::random_gnp(&mut sample::rng(seed), n, 0.5)
}
