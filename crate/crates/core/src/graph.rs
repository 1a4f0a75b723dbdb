//! Simple undirected graphs and the operations used to compose them.
//!
//! A [`Graph`] is an immutable value: every operation returns a fresh graph.
//! Product graphs index the vertex pair `(u, v)` as `u * n2 + v`.

use std::collections::VecDeque;
use std::fmt;

use crate::error::{Error, Result};

/// Largest order accepted by the dense adjacency storage.
pub const MAX_ORDER: usize = 4096;

/// Simple undirected graph on vertices `0..n` with a dense symmetric adjacency relation.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    m: usize,
    adj: Vec<bool>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph").field("n", &self.n).field("m", &self.m).field("edges", &self.edges().collect::<Vec<_>>()).finish()
    }
}

/// Mutable staging area used while a graph is being assembled.
struct Builder {
    n: usize,
    m: usize,
    adj: Vec<bool>,
}

impl Builder {
    fn new(n: usize) -> Self {
        assert!(n <= MAX_ORDER, "graph order {n} exceeds {MAX_ORDER}");
        Builder { n, m: 0, adj: vec![false; n * n] }
    }

    fn complete(n: usize) -> Self {
        let mut b = Builder::new(n);
        for i in 0..n {
            for j in 0..n {
                b.adj[i * n + j] = i != j;
            }
        }
        b.m = n * n.saturating_sub(1) / 2;
        b
    }

    fn add(&mut self, u: usize, v: usize) {
        debug_assert!(u != v);
        let idx = u * self.n + v;
        if !self.adj[idx] {
            self.adj[idx] = true;
            self.adj[v * self.n + u] = true;
            self.m += 1;
        }
    }

    fn remove(&mut self, u: usize, v: usize) {
        let idx = u * self.n + v;
        if self.adj[idx] {
            self.adj[idx] = false;
            self.adj[v * self.n + u] = false;
            self.m -= 1;
        }
    }

    fn finish(self) -> Graph {
        Graph { n: self.n, m: self.m, adj: self.adj }
    }
}

impl Graph {
    /// Graph on `n` isolated vertices.
    pub fn empty(n: usize) -> Self {
        Builder::new(n).finish()
    }

    pub fn complete(n: usize) -> Self {
        Builder::complete(n).finish()
    }

    /// `K_{q,r}` with parts `0..q` and `q..q+r`.
    pub fn complete_bipartite(q: usize, r: usize) -> Self {
        Graph::empty(q).join(&Graph::empty(r))
    }

    /// Path `0 - 1 - ... - (n-1)`.
    pub fn path(n: usize) -> Self {
        let mut b = Builder::new(n);
        for i in 1..n {
            b.add(i - 1, i);
        }
        b.finish()
    }

    /// Cycle on `n >= 3` vertices; smaller `n` gives the path.
    pub fn cycle(n: usize) -> Self {
        let mut b = Builder::new(n);
        for i in 1..n {
            b.add(i - 1, i);
        }
        if n >= 3 {
            b.add(n - 1, 0);
        }
        b.finish()
    }

    /// Builds a graph from an edge list, rejecting loops, duplicates and
    /// out-of-range endpoints.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if n > MAX_ORDER {
            return Err(Error::TooLarge(n));
        }
        let mut b = Builder::new(n);
        for &(u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            if b.adj[u * n + v] {
                return Err(Error::DuplicateEdge(u.min(v), u.max(v)));
            }
            b.add(u, v);
        }
        Ok(b.finish())
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn size(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u * self.n + v]
    }

    pub fn neighbors(&self, u: usize) -> impl Iterator<Item = usize> + '_ {
        let row = &self.adj[u * self.n..(u + 1) * self.n];
        row.iter().enumerate().filter(|(_, &a)| a).map(|(v, _)| v)
    }

    pub fn degree(&self, u: usize) -> usize {
        self.adj[u * self.n..(u + 1) * self.n].iter().filter(|&&a| a).count()
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|u| self.degree(u)).collect()
    }

    /// Edges `(u, v)` with `u < v` in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| (u + 1..self.n).filter(move |&v| self.has_edge(u, v)).map(move |v| (u, v)))
    }

    /// Disjoint union; vertices of `other` are shifted by `self.order()`.
    pub fn union(&self, other: &Graph) -> Graph {
        let offset = self.n;
        let mut b = Builder::new(self.n + other.n);
        for (u, v) in self.edges() {
            b.add(u, v);
        }
        for (u, v) in other.edges() {
            b.add(u + offset, v + offset);
        }
        b.finish()
    }

    /// Disjoint union plus every edge between the two vertex sets.
    pub fn join(&self, other: &Graph) -> Graph {
        let offset = self.n;
        let mut b = Builder::new(self.n + other.n);
        for (u, v) in self.edges() {
            b.add(u, v);
        }
        for (u, v) in other.edges() {
            b.add(u + offset, v + offset);
        }
        for u in 0..self.n {
            for v in 0..other.n {
                b.add(u, v + offset);
            }
        }
        b.finish()
    }

    pub fn complement(&self) -> Graph {
        let mut b = Builder::complete(self.n);
        for (u, v) in self.edges() {
            b.remove(u, v);
        }
        b.finish()
    }

    /// Box product: `(u1,v1) ~ (u2,v2)` iff one coordinate agrees and the
    /// other is an edge of its factor.
    pub fn cartesian_product(&self, other: &Graph) -> Graph {
        let n2 = other.n;
        let mut b = Builder::new(self.n * n2);
        for u in 0..self.n {
            for (v1, v2) in other.edges() {
                b.add(u * n2 + v1, u * n2 + v2);
            }
        }
        for (u1, u2) in self.edges() {
            for v in 0..n2 {
                b.add(u1 * n2 + v, u2 * n2 + v);
            }
        }
        b.finish()
    }

    /// Conjunction: `(u1,v1) ~ (u2,v2)` iff `u1 ~ u2` and `v1 ~ v2`.
    pub fn kronecker_product(&self, other: &Graph) -> Graph {
        let n2 = other.n;
        let mut b = Builder::new(self.n * n2);
        for (u1, u2) in self.edges() {
            for (v1, v2) in other.edges() {
                b.add(u1 * n2 + v1, u2 * n2 + v2);
                b.add(u1 * n2 + v2, u2 * n2 + v1);
            }
        }
        b.finish()
    }

    /// `K_n - E(g)` with `g` placed on vertices `0..g.order()`.
    pub fn kn_minus_edges(n: usize, g: &Graph) -> Result<Graph> {
        if g.n > n {
            return Err(Error::SubgraphTooLarge { found: g.n, ambient: n });
        }
        if n > MAX_ORDER {
            return Err(Error::TooLarge(n));
        }
        let mut b = Builder::complete(n);
        for (u, v) in g.edges() {
            b.remove(u, v);
        }
        Ok(b.finish())
    }

    /// Relabels vertex `i` as `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n, "permutation length must equal the order");
        let mut b = Builder::new(self.n);
        for (u, v) in self.edges() {
            b.add(perm[u], perm[v]);
        }
        b.finish()
    }

    /// Component label of every vertex, labels assigned in order of first visit.
    pub fn components(&self) -> Vec<usize> {
        let mut label = vec![usize::MAX; self.n];
        let mut queue = VecDeque::new();
        let mut next = 0;
        for start in 0..self.n {
            if label[start] != usize::MAX {
                continue;
            }
            label[start] = next;
            queue.push_back(start);
            while let Some(u) = queue.pop_front() {
                for v in self.neighbors(u) {
                    if label[v] == usize::MAX {
                        label[v] = next;
                        queue.push_back(v);
                    }
                }
            }
            next += 1;
        }
        label
    }

    pub fn component_count(&self) -> usize {
        self.components().into_iter().max().map_or(0, |c| c + 1)
    }

    /// Breadth-first reachability from vertex 0.
    pub fn is_connected(&self) -> Result<bool> {
        if self.n == 0 {
            return Err(Error::EmptyGraph);
        }
        Ok(self.component_count() == 1)
    }

    /// Two-colouring by breadth-first search.
    pub fn is_bipartite(&self) -> bool {
        let mut colour = vec![u8::MAX; self.n];
        let mut queue = VecDeque::new();
        for start in 0..self.n {
            if colour[start] != u8::MAX {
                continue;
            }
            colour[start] = 0;
            queue.push_back(start);
            while let Some(u) = queue.pop_front() {
                for v in self.neighbors(u) {
                    if colour[v] == u8::MAX {
                        colour[v] = 1 - colour[u];
                        queue.push_back(v);
                    } else if colour[v] == colour[u] {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Sorted (non-increasing) degree sequence.
    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut d = self.degrees();
        d.sort_unstable_by(|a, b| b.cmp(a));
        d
    }
}

/// The named graph families the constructions are built from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NamedFamily {
    Complete(usize),
    Empty(usize),
    CompleteBipartite(usize, usize),
}

impl NamedFamily {
    pub fn build(self) -> Graph {
        match self {
            NamedFamily::Complete(n) => Graph::complete(n),
            NamedFamily::Empty(n) => Graph::empty(n),
            NamedFamily::CompleteBipartite(q, r) => Graph::complete_bipartite(q, r),
        }
    }

    pub fn edge_count(self) -> usize {
        match self {
            NamedFamily::Complete(n) => n * n.saturating_sub(1) / 2,
            NamedFamily::Empty(_) => 0,
            NamedFamily::CompleteBipartite(q, r) => q * r,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k2() -> Graph {
        Graph::complete(2)
    }

    #[test]
    fn union_examples() {
        let g = k2().union(&k2());
        assert_eq!((g.order(), g.size(), g.component_count()), (4, 2, 2));

        let p5 = Graph::path(5);
        assert_eq!(Graph::empty(0).union(&p5), p5);

        let g = Graph::path(3).union(&Graph::empty(2));
        assert_eq!((g.order(), g.size(), g.component_count()), (5, 2, 3));
    }

    #[test]
    fn join_examples() {
        assert_eq!(Graph::complete(1).join(&Graph::complete(1)), k2());
        let c4 = Graph::empty(2).join(&Graph::empty(2));
        assert_eq!(c4.degree_sequence(), vec![2, 2, 2, 2]);
        assert_eq!(c4, Graph::complete_bipartite(2, 2));
        assert!(c4.is_connected().unwrap() && c4.size() == 4);

        let g = Graph::path(3).join(&Graph::empty(4));
        assert_eq!((g.order(), g.size()), (7, 14));
    }

    #[test]
    fn complement_examples() {
        assert_eq!(Graph::complete(5).complement(), Graph::empty(5));
        let c4 = Graph::cycle(4);
        assert_eq!(c4.complement().complement(), c4);
        let two_k2 = c4.complement();
        assert_eq!(two_k2.edges().collect::<Vec<_>>(), vec![(0, 2), (1, 3)]);
    }

    #[test]
    fn cartesian_examples() {
        let sq = k2().cartesian_product(&k2());
        assert_eq!(sq.degree_sequence(), vec![2, 2, 2, 2]);
        assert!(sq.is_connected().unwrap());

        let g = Graph::cycle(5);
        assert_eq!(g.cartesian_product(&Graph::complete(1)), g);

        let grid = Graph::path(3).cartesian_product(&k2());
        assert_eq!((grid.order(), grid.size()), (6, 7));
    }

    #[test]
    fn kronecker_examples() {
        let g = k2().kronecker_product(&k2());
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 3), (1, 2)]);
        assert!(!g.is_connected().unwrap());

        assert_eq!(Graph::cycle(5).kronecker_product(&Graph::empty(3)), Graph::empty(15));

        let g = Graph::path(3).kronecker_product(&k2());
        assert_eq!((g.order(), g.size()), (6, 4));
    }

    #[test]
    fn kn_minus_examples() {
        let g = Graph::kn_minus_edges(4, &k2()).unwrap();
        assert_eq!((g.order(), g.size()), (4, 5));
        assert!(!g.has_edge(0, 1));

        assert_eq!(Graph::kn_minus_edges(6, &Graph::empty(6)).unwrap(), Graph::complete(6));

        let g = Graph::kn_minus_edges(5, &Graph::cycle(4)).unwrap();
        assert_eq!((g.order(), g.size()), (5, 6));

        assert_eq!(Graph::kn_minus_edges(3, &Graph::path(4)), Err(Error::SubgraphTooLarge { found: 4, ambient: 3 }));
    }

    #[test]
    fn connectivity() {
        assert!(Graph::complete(5).is_connected().unwrap());
        assert!(!k2().union(&k2()).is_connected().unwrap());
        assert_eq!(Graph::empty(0).is_connected(), Err(Error::EmptyGraph));
        assert!(Graph::complete(1).is_connected().unwrap());
    }

    #[test]
    fn from_edges_validation() {
        assert_eq!(Graph::from_edges(3, &[(0, 3)]), Err(Error::VertexOutOfRange { vertex: 3, n: 3 }));
        assert_eq!(Graph::from_edges(3, &[(1, 1)]), Err(Error::SelfLoop(1)));
        assert_eq!(Graph::from_edges(3, &[(0, 1), (1, 0)]), Err(Error::DuplicateEdge(0, 1)));
    }

    #[test]
    fn named_family_counts() {
        for fam in [NamedFamily::Complete(6), NamedFamily::Empty(4), NamedFamily::CompleteBipartite(3, 5)] {
            assert_eq!(fam.build().size(), fam.edge_count());
        }
    }

    #[test]
    fn bipartite_detection() {
        assert!(Graph::cycle(6).is_bipartite());
        assert!(!Graph::cycle(5).is_bipartite());
        assert!(Graph::empty(3).is_bipartite());
    }
}
