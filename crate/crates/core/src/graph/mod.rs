//! Structural graph routines over vertex indices `0..n`.
//!
//! Vertices are the item indices of an [`Instance`](crate::Instance); all
//! routines are pure and deterministic.

mod chordal;
mod components;
mod decomposition;
mod matching;
mod nice;
mod td_format;

pub use chordal::{clique_tree, recognize_chordal, Chordality, NotChordalInput};
pub use components::{bipartition, connected_components, Bipartition};
pub use decomposition::{
    heuristic_tree_decomposition, validate_decomposition, DecompositionReport, EliminationHeuristic,
    TdViolation, TreeDecomposition,
};
pub use matching::{maximum_matching, Matching};
pub use nice::{to_nice_decomposition, NiceKind, NiceTreeDecomposition};
pub use td_format::{parse_td, write_td, TdParseError};

/// Simple undirected graph with sorted adjacency lists.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    edges: Vec<(usize, usize)>,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
            edges: Vec::new(),
        }
    }

    /// Builds a graph from an edge list. Self-loops and duplicate edges are
    /// ignored; endpoints must be `< n`.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut g = Graph::empty(n);
        for (u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    pub fn complete(n: usize) -> Self {
        Graph::from_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))
    }

    pub fn cycle(n: usize) -> Self {
        Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n)))
    }

    pub fn path(n: usize) -> Self {
        Graph::from_edges(n, (1..n).map(|i| (i - 1, i)))
    }

    /// Returns false if the edge was a self-loop or already present.
    pub fn add_edge(&mut self, u: usize, v: usize) -> bool {
        assert!(u < self.n() && v < self.n(), "edge endpoint out of range");
        if u == v || self.has_edge(u, v) {
            return false;
        }
        let (a, b) = if u < v { (u, v) } else { (v, u) };
        let pos = self.adj[a].binary_search(&b).unwrap_err();
        self.adj[a].insert(pos, b);
        let pos = self.adj[b].binary_search(&a).unwrap_err();
        self.adj[b].insert(pos, a);
        let pos = self.edges.binary_search(&(a, b)).unwrap_err();
        self.edges.insert(pos, (a, b));
        true
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.adj.len()
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.edges.len()
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Whether no two vertices of `set` are adjacent.
    pub fn is_independent(&self, set: &[usize]) -> bool {
        set.iter()
            .enumerate()
            .all(|(i, &u)| set[i + 1..].iter().all(|&v| !self.has_edge(u, v)))
    }

    /// Neighbourhood bitmasks; requires `n <= 64`.
    pub fn adjacency_masks(&self) -> Vec<u64> {
        assert!(self.n() <= 64, "adjacency masks need n <= 64");
        self.adj
            .iter()
            .map(|ns| ns.iter().fold(0u64, |m, &v| m | (1 << v)))
            .collect()
    }

    /// Subgraph induced by `vertices`, relabelled to `0..vertices.len()` in the
    /// given order.
    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let mut local = vec![usize::MAX; self.n()];
        for (i, &v) in vertices.iter().enumerate() {
            local[v] = i;
        }
        let mut g = Graph::empty(vertices.len());
        for (i, &v) in vertices.iter().enumerate() {
            for &w in self.neighbors(v) {
                if local[w] != usize::MAX && local[w] > i {
                    g.add_edge(i, local[w]);
                }
            }
        }
        g
    }
}
