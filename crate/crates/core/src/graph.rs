//! Undirected simple graphs stored as adjacency bitrows.
//!
//! Rows are `u64` words so neighborhood intersection (the common-neighbor
//! count that dominates extension pruning) is word-parallel. Graphs are
//! immutable after construction and safe to share across threads.

use std::fmt;

use thiserror::Error;

const WORD_BITS: usize = 64;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for graph of order {order}")]
    VertexOutOfRange { vertex: usize, order: usize },
    #[error("operation undefined for u = v = {0}")]
    EqualVertices(usize),
}

/// Undirected simple graph on vertices `0..n`.
///
/// Invariants: the adjacency relation is symmetric with zero diagonal, and
/// bits at positions `>= n` of every row are zero.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    words: usize,
    bits: Vec<u64>,
}

fn words_for(n: usize) -> usize {
    n.div_ceil(WORD_BITS).max(1)
}

impl Graph {
    /// Graph with `n` vertices and no edges.
    pub fn empty(n: usize) -> Self {
        let words = words_for(n);
        Graph {
            n,
            words,
            bits: vec![0; n * words],
        }
    }

    /// Builds a graph from an edge list. Panics on out-of-range endpoints
    /// or self-loops; duplicate edges are harmless.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut g = Graph::empty(n);
        for &(u, v) in edges {
            assert!(u < n && v < n, "edge ({u},{v}) out of range for order {n}");
            assert_ne!(u, v, "self-loop at {u}");
            g.set_edge(u, v, true);
        }
        g
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for u in 0..n {
            for v in (u + 1)..n {
                g.set_edge(u, v, true);
            }
        }
        g
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "cycle needs at least 3 vertices");
        let mut edges: Vec<(usize, usize)> = (0..n - 1).map(|i| (i, i + 1)).collect();
        edges.push((n - 1, 0));
        Graph::from_edges(n, &edges)
    }

    pub fn path(n: usize) -> Self {
        let edges: Vec<(usize, usize)> = (0..n.saturating_sub(1)).map(|i| (i, i + 1)).collect();
        Graph::from_edges(n, &edges)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn row(&self, u: usize) -> &[u64] {
        &self.bits[u * self.words..(u + 1) * self.words]
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.bits[u * self.words + v / WORD_BITS] >> (v % WORD_BITS) & 1 == 1
    }

    pub(crate) fn set_edge(&mut self, u: usize, v: usize, present: bool) {
        debug_assert!(u != v && u < self.n && v < self.n);
        let (wu, bu) = (u * self.words + v / WORD_BITS, v % WORD_BITS);
        let (wv, bv) = (v * self.words + u / WORD_BITS, u % WORD_BITS);
        if present {
            self.bits[wu] |= 1 << bu;
            self.bits[wv] |= 1 << bv;
        } else {
            self.bits[wu] &= !(1 << bu);
            self.bits[wv] &= !(1 << bv);
        }
    }

    #[inline]
    pub fn degree(&self, u: usize) -> usize {
        self.row(u).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn edge_count(&self) -> usize {
        (0..self.n).map(|u| self.degree(u)).sum::<usize>() / 2
    }

    pub fn vertices(&self) -> std::ops::Range<usize> {
        0..self.n
    }

    pub fn neighbors(&self, u: usize) -> impl Iterator<Item = usize> + '_ {
        BitIter::new(self.row(u))
    }

    /// `|N(u) ∩ N(v)|`; errors when `u = v` (the count is undefined there).
    pub fn common_neighbor_count(&self, u: usize, v: usize) -> Result<usize, GraphError> {
        if u == v {
            return Err(GraphError::EqualVertices(u));
        }
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        let count = self
            .row(u)
            .iter()
            .zip(self.row(v))
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum();
        Ok(count)
    }

    /// Subgraph induced by `s`; vertices keep the ascending order of `s`.
    pub fn induced_subgraph(&self, s: &VertexSet) -> Result<Graph, GraphError> {
        let members: Vec<usize> = s.iter().collect();
        if let Some(&max) = members.last() {
            self.check_vertex(max)?;
        }
        let mut g = Graph::empty(members.len());
        for (i, &u) in members.iter().enumerate() {
            for (j, &v) in members.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    g.set_edge(i, j, true);
                }
            }
        }
        Ok(g)
    }

    /// New graph on `n + 1` vertices; the new vertex gets index `n` and
    /// neighborhood exactly `nbrs`.
    pub fn add_vertex(&self, nbrs: &VertexSet) -> Result<Graph, GraphError> {
        if let Some(max) = nbrs.max_element() {
            self.check_vertex(max)?;
        }
        let mut g = Graph::empty(self.n + 1);
        for u in 0..self.n {
            for v in (u + 1)..self.n {
                if self.has_edge(u, v) {
                    g.set_edge(u, v, true);
                }
            }
        }
        for u in nbrs.iter() {
            g.set_edge(u, self.n, true);
        }
        Ok(g)
    }

    /// Copy of the graph with extra edges added.
    pub fn with_edges(&self, extra: &[(usize, usize)]) -> Graph {
        let mut g = self.clone();
        for &(u, v) in extra {
            assert!(u < g.n && v < g.n && u != v, "bad edge ({u},{v})");
            g.set_edge(u, v, true);
        }
        g
    }

    /// Relabels vertices: vertex `u` of `self` becomes `perm[u]`.
    pub fn permuted(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n);
        let mut g = Graph::empty(self.n);
        for u in 0..self.n {
            for v in self.neighbors(u) {
                if v > u {
                    g.set_edge(perm[u], perm[v], true);
                }
            }
        }
        g
    }

    /// Common degree when the graph is regular.
    pub fn regular_degree(&self) -> Option<usize> {
        if self.n == 0 {
            return Some(0);
        }
        let d = self.degree(0);
        (1..self.n).all(|u| self.degree(u) == d).then_some(d)
    }

    fn check_vertex(&self, v: usize) -> Result<(), GraphError> {
        if v < self.n {
            Ok(())
        } else {
            Err(GraphError::VertexOutOfRange {
                vertex: v,
                order: self.n,
            })
        }
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let edges: Vec<(usize, usize)> = (0..self.n)
            .flat_map(|u| self.neighbors(u).filter(move |&v| v > u).map(move |v| (u, v)))
            .collect();
        write!(f, "Graph(n={}, edges={:?})", self.n, edges)
    }
}

/// Subset of the vertices of some referenced graph, as a bitset.
#[derive(Clone, Default, PartialEq, Eq, Debug)]
pub struct VertexSet {
    words: Vec<u64>,
}

impl VertexSet {
    pub fn new() -> Self {
        VertexSet::default()
    }

    /// All of `0..n`.
    pub fn full(n: usize) -> Self {
        (0..n).collect()
    }

    pub fn insert(&mut self, v: usize) {
        let w = v / WORD_BITS;
        if w >= self.words.len() {
            self.words.resize(w + 1, 0);
        }
        self.words[w] |= 1 << (v % WORD_BITS);
    }

    pub fn remove(&mut self, v: usize) {
        let w = v / WORD_BITS;
        if w < self.words.len() {
            self.words[w] &= !(1 << (v % WORD_BITS));
        }
    }

    pub fn contains(&self, v: usize) -> bool {
        self.words
            .get(v / WORD_BITS)
            .is_some_and(|w| w >> (v % WORD_BITS) & 1 == 1)
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        BitIter::new(&self.words)
    }

    pub fn max_element(&self) -> Option<usize> {
        for (i, &w) in self.words.iter().enumerate().rev() {
            if w != 0 {
                return Some(i * WORD_BITS + (WORD_BITS - 1 - w.leading_zeros() as usize));
            }
        }
        None
    }

    /// Set of the lowest bits of `mask`, mapping bit `i` to vertex `i`.
    pub fn from_mask(mask: u64) -> Self {
        VertexSet { words: vec![mask] }
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        let mut s = VertexSet::new();
        for v in iter {
            s.insert(v);
        }
        s
    }
}

struct BitIter<'a> {
    words: &'a [u64],
    word_idx: usize,
    current: u64,
}

impl<'a> BitIter<'a> {
    fn new(words: &'a [u64]) -> Self {
        BitIter {
            words,
            word_idx: 0,
            current: words.first().copied().unwrap_or(0),
        }
    }
}

impl Iterator for BitIter<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        while self.current == 0 {
            self.word_idx += 1;
            if self.word_idx >= self.words.len() {
                return None;
            }
            self.current = self.words[self.word_idx];
        }
        let bit = self.current.trailing_zeros() as usize;
        self.current &= self.current - 1;
        Some(self.word_idx * WORD_BITS + bit)
    }
}

/// The Petersen graph, the (10,3,0,1) strongly regular fixture.
pub fn petersen() -> Graph {
    Graph::from_edges(
        10,
        &[
            (0, 1),
            (1, 2),
            (2, 3),
            (3, 4),
            (4, 0),
            (5, 7),
            (7, 9),
            (9, 6),
            (6, 8),
            (8, 5),
            (0, 5),
            (1, 6),
            (2, 7),
            (3, 8),
            (4, 9),
        ],
    )
}

/// The 3x3 rook graph, isomorphic to Paley(9): parameters (9,4,1,2).
pub fn paley9() -> Graph {
    let mut edges = Vec::new();
    for a in 0..9usize {
        for b in (a + 1)..9 {
            if a / 3 == b / 3 || a % 3 == b % 3 {
                edges.push((a, b));
            }
        }
    }
    Graph::from_edges(9, &edges)
}

/// Paley(13): quadratic-residue circulant, parameters (13,6,2,3).
pub fn paley13() -> Graph {
    let residues = [1usize, 3, 4, 9, 10, 12];
    let mut edges = Vec::new();
    for a in 0..13usize {
        for b in (a + 1)..13 {
            if residues.contains(&((b - a) % 13)) {
                edges.push((a, b));
            }
        }
    }
    Graph::from_edges(13, &edges)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_and_edges() {
        let g = Graph::from_edges(4, &[(0, 1), (1, 2)]);
        assert!(g.has_edge(0, 1) && g.has_edge(1, 0));
        assert!(!g.has_edge(0, 2));
        assert_eq!(g.degree(1), 2);
        assert_eq!(g.edge_count(), 2);
    }

    #[test]
    fn common_neighbors_k4() {
        let g = Graph::complete(4);
        for u in 0..4 {
            for v in 0..4 {
                if u != v {
                    assert_eq!(g.common_neighbor_count(u, v).unwrap(), 2);
                }
            }
        }
        assert_eq!(
            g.common_neighbor_count(2, 2),
            Err(GraphError::EqualVertices(2))
        );
    }

    #[test]
    fn common_neighbors_petersen() {
        let g = petersen();
        for u in 0..10 {
            for v in (u + 1)..10 {
                let c = g.common_neighbor_count(u, v).unwrap();
                assert_eq!(c, if g.has_edge(u, v) { 0 } else { 1 });
            }
        }
    }

    #[test]
    fn induced_k3_from_k4() {
        let g = Graph::complete(4);
        let s: VertexSet = [0usize, 1, 2].into_iter().collect();
        let h = g.induced_subgraph(&s).unwrap();
        assert_eq!(h.n(), 3);
        assert_eq!(h.edge_count(), 3);
    }

    #[test]
    fn induced_c5_from_petersen() {
        let g = petersen();
        let s: VertexSet = [0usize, 1, 2, 3, 4].into_iter().collect();
        let h = g.induced_subgraph(&s).unwrap();
        assert_eq!(h.n(), 5);
        assert_eq!(h.edge_count(), 5);
        assert!((0..5).all(|u| h.degree(u) == 2));
    }

    #[test]
    fn induced_empty() {
        let g = petersen();
        let h = g.induced_subgraph(&VertexSet::new()).unwrap();
        assert_eq!(h.n(), 0);
    }

    #[test]
    fn induced_full_is_identity() {
        let g = petersen();
        let h = g.induced_subgraph(&VertexSet::full(10)).unwrap();
        assert_eq!(h, g);
    }

    #[test]
    fn induced_out_of_range() {
        let g = Graph::complete(3);
        let s: VertexSet = [0usize, 5].into_iter().collect();
        assert!(matches!(
            g.induced_subgraph(&s),
            Err(GraphError::VertexOutOfRange { vertex: 5, order: 3 })
        ));
    }

    #[test]
    fn add_vertex_cases() {
        let k3 = Graph::complete(3);
        let k4 = k3.add_vertex(&VertexSet::full(3)).unwrap();
        assert_eq!(k4, Graph::complete(4));

        let k3_k1 = k3.add_vertex(&VertexSet::new()).unwrap();
        assert_eq!(k3_k1.n(), 4);
        assert_eq!(k3_k1.degree(3), 0);

        let nbrs: VertexSet = [0usize, 2].into_iter().collect();
        let g = k3.add_vertex(&nbrs).unwrap();
        assert_eq!(g.degree(3), nbrs.len());
    }

    #[test]
    fn add_vertex_then_restrict_recovers() {
        let g = petersen();
        let nbrs: VertexSet = [0usize, 3, 7].into_iter().collect();
        let bigger = g.add_vertex(&nbrs).unwrap();
        let back = bigger.induced_subgraph(&VertexSet::full(10)).unwrap();
        assert_eq!(back, g);
    }

    #[test]
    fn vertex_set_ops() {
        let mut s = VertexSet::new();
        s.insert(3);
        s.insert(70);
        assert!(s.contains(3) && s.contains(70) && !s.contains(4));
        assert_eq!(s.len(), 2);
        assert_eq!(s.max_element(), Some(70));
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![3, 70]);
        s.remove(70);
        assert_eq!(s.max_element(), Some(3));
    }

    #[test]
    fn fixture_parameters() {
        for (g, k, lambda, mu) in [
            (petersen(), 3, 0, 1),
            (paley9(), 4, 1, 2),
            (paley13(), 6, 2, 3),
        ] {
            assert_eq!(g.regular_degree(), Some(k));
            for u in 0..g.n() {
                for v in (u + 1)..g.n() {
                    let c = g.common_neighbor_count(u, v).unwrap();
                    assert_eq!(c, if g.has_edge(u, v) { lambda } else { mu });
                }
            }
        }
    }
}
