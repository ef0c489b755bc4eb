//! Graph types and the exact algorithms shared by every other module:
//! girth, side-respecting bipartite embedding, independent-set search and
//! counting, graph6 and JSON serialization.

mod embed;
mod girth;
mod graph6;
mod json;
mod mis;

pub use embed::{embeds_side_respecting, find_subgraph, SideEmbedding};
pub use girth::{girth, girth_bipartite};
pub use graph6::{decode_graph6, encode_graph6, Graph6Error};
pub use json::{
    bipartite_from_json, bipartite_to_json, byte_offset_of, BipartiteJson, JsonFormatError,
};
pub use mis::{
    count_independent_sets, independence_heuristic, independence_number,
    independence_number_ordered, verify_independent, CountResult, MisResult, VertexOrder,
};

use crate::bitset::Bits;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for graph on {count} vertices")]
    VertexOutOfRange { vertex: usize, count: usize },
    #[error("self-loop at vertex {0} is not allowed")]
    SelfLoop(usize),
}

/// A simple undirected graph with bitset adjacency rows.
///
/// Invariants enforced by construction: no self-loops, symmetric adjacency,
/// vertex ids `0..vertex_count`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Graph {
    n: usize,
    adj: Vec<Bits>,
    edge_count: usize,
}

impl Graph {
    pub fn new(n: usize) -> Self {
        Graph {
            n,
            adj: vec![Bits::new(n); n],
            edge_count: 0,
        }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut g = Graph::new(n);
        for &(u, v) in edges {
            g.try_add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Adds an edge; panics on self-loops or out-of-range ids.
    pub fn add_edge(&mut self, u: usize, v: usize) {
        self.try_add_edge(u, v).unwrap();
    }

    pub fn try_add_edge(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        if u >= self.n || v >= self.n {
            return Err(GraphError::VertexOutOfRange {
                vertex: u.max(v),
                count: self.n,
            });
        }
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        if !self.adj[u].get(v) {
            self.adj[u].set(v);
            self.adj[v].set(u);
            self.edge_count += 1;
        }
        Ok(())
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].get(v)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count()
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[v].iter_ones()
    }

    pub fn neighbors_bits(&self, v: usize) -> &Bits {
        &self.adj[v]
    }

    /// Edges as (u, v) with u < v, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| {
            self.adj[u]
                .iter_ones()
                .filter(move |&v| v > u)
                .map(move |v| (u, v))
        })
    }

    pub fn complement(&self) -> Graph {
        let mut g = Graph::new(self.n);
        for u in 0..self.n {
            for v in u + 1..self.n {
                if !self.has_edge(u, v) {
                    g.add_edge(u, v);
                }
            }
        }
        g
    }

    /// Subgraph induced on `verts`; vertex `i` of the result is `verts[i]`.
    pub fn induced(&self, verts: &[usize]) -> Graph {
        let mut g = Graph::new(verts.len());
        for (i, &u) in verts.iter().enumerate() {
            for (j, &v) in verts.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    g.add_edge(i, j);
                }
            }
        }
        g
    }

    /// Relabels vertices: vertex `v` becomes `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n);
        let mut g = Graph::new(self.n);
        for (u, v) in self.edges() {
            g.add_edge(perm[u], perm[v]);
        }
        g
    }

    pub fn complete(n: usize) -> Graph {
        let mut g = Graph::new(n);
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v);
            }
        }
        g
    }

    pub fn cycle(n: usize) -> Graph {
        assert!(n >= 3, "a cycle needs at least 3 vertices");
        let mut g = Graph::new(n);
        for v in 0..n {
            g.add_edge(v, (v + 1) % n);
        }
        g
    }

    pub fn path(n: usize) -> Graph {
        let mut g = Graph::new(n);
        for v in 1..n {
            g.add_edge(v - 1, v);
        }
        g
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut seen = Bits::new(self.n);
        let mut stack = vec![0];
        seen.set(0);
        let mut cnt = 1;
        while let Some(u) = stack.pop() {
            for v in self.neighbors(u) {
                if !seen.get(v) {
                    seen.set(v);
                    cnt += 1;
                    stack.push(v);
                }
            }
        }
        cnt == self.n
    }
}

/// A bipartite graph with distinguished left (size `m`) and right (size `n`)
/// parts. Neighbor lists are kept sorted.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BipartiteGraph {
    left_count: usize,
    right_count: usize,
    left_adj: Vec<Vec<u32>>,
    right_adj: Vec<Vec<u32>>,
    edge_count: usize,
}

impl BipartiteGraph {
    pub fn new(left_count: usize, right_count: usize) -> Self {
        BipartiteGraph {
            left_count,
            right_count,
            left_adj: vec![Vec::new(); left_count],
            right_adj: vec![Vec::new(); right_count],
            edge_count: 0,
        }
    }

    pub fn from_edges(
        left_count: usize,
        right_count: usize,
        edges: &[(usize, usize)],
    ) -> Result<Self, GraphError> {
        let mut g = BipartiteGraph::new(left_count, right_count);
        for &(l, r) in edges {
            g.try_add_edge(l, r)?;
        }
        Ok(g)
    }

    /// Builds from 0/1 incidence-matrix rows (rows = left vertices).
    pub fn from_rows(rows: &[Vec<u8>]) -> Self {
        let m = rows.len();
        let n = rows.first().map_or(0, |r| r.len());
        let mut g = BipartiteGraph::new(m, n);
        for (l, row) in rows.iter().enumerate() {
            assert!(row.len() == n, "ragged incidence matrix");
            for (r, &bit) in row.iter().enumerate() {
                if bit != 0 {
                    g.add_edge(l, r);
                }
            }
        }
        g
    }

    pub fn add_edge(&mut self, l: usize, r: usize) {
        self.try_add_edge(l, r).unwrap();
    }

    pub fn try_add_edge(&mut self, l: usize, r: usize) -> Result<(), GraphError> {
        if l >= self.left_count {
            return Err(GraphError::VertexOutOfRange {
                vertex: l,
                count: self.left_count,
            });
        }
        if r >= self.right_count {
            return Err(GraphError::VertexOutOfRange {
                vertex: r,
                count: self.right_count,
            });
        }
        if let Err(pos) = self.left_adj[l].binary_search(&(r as u32)) {
            self.left_adj[l].insert(pos, r as u32);
            let pos2 = self.right_adj[r].binary_search(&(l as u32)).unwrap_err();
            self.right_adj[r].insert(pos2, l as u32);
            self.edge_count += 1;
        }
        Ok(())
    }

    pub fn left_count(&self) -> usize {
        self.left_count
    }

    pub fn right_count(&self) -> usize {
        self.right_count
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn has_edge(&self, l: usize, r: usize) -> bool {
        self.left_adj[l].binary_search(&(r as u32)).is_ok()
    }

    pub fn left_neighbors(&self, l: usize) -> &[u32] {
        &self.left_adj[l]
    }

    pub fn right_neighbors(&self, r: usize) -> &[u32] {
        &self.right_adj[r]
    }

    pub fn left_degree(&self, l: usize) -> usize {
        self.left_adj[l].len()
    }

    pub fn right_degree(&self, r: usize) -> usize {
        self.right_adj[r].len()
    }

    /// Edges (l, r) in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.left_adj
            .iter()
            .enumerate()
            .flat_map(|(l, rs)| rs.iter().map(move |&r| (l, r as usize)))
    }

    pub fn degree_profile(&self) -> DegreeProfile {
        DegreeProfile {
            left_degrees: (0..self.left_count).map(|l| self.left_degree(l)).collect(),
            right_degrees: (0..self.right_count)
                .map(|r| self.right_degree(r))
                .collect(),
        }
    }

    /// Swaps the two parts.
    pub fn transpose(&self) -> BipartiteGraph {
        BipartiteGraph {
            left_count: self.right_count,
            right_count: self.left_count,
            left_adj: self.right_adj.clone(),
            right_adj: self.left_adj.clone(),
            edge_count: self.edge_count,
        }
    }

    /// The underlying simple graph: left vertices keep their ids, right
    /// vertex `r` becomes `left_count + r`.
    pub fn to_graph(&self) -> Graph {
        let mut g = Graph::new(self.left_count + self.right_count);
        for (l, r) in self.edges() {
            g.add_edge(l, self.left_count + r);
        }
        g
    }

    /// Right-neighborhoods of left vertices as bitsets over the right part.
    pub fn left_rows_bits(&self) -> Vec<Bits> {
        self.left_adj
            .iter()
            .map(|rs| {
                let mut b = Bits::new(self.right_count);
                for &r in rs {
                    b.set(r as usize);
                }
                b
            })
            .collect()
    }

    /// Incidence matrix as 0/1 rows (rows = left vertices).
    pub fn to_rows(&self) -> Vec<Vec<u8>> {
        (0..self.left_count)
            .map(|l| {
                let mut row = vec![0u8; self.right_count];
                for &r in &self.left_adj[l] {
                    row[r as usize] = 1;
                }
                row
            })
            .collect()
    }

    /// The two-by-two all-ones pattern (the four-cycle).
    pub fn c4_pattern() -> BipartiteGraph {
        BipartiteGraph::from_rows(&[vec![1, 1], vec![1, 1]])
    }
}

/// Left and right degree sequences of a bipartite graph.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct DegreeProfile {
    pub left_degrees: Vec<usize>,
    pub right_degrees: Vec<usize>,
}

impl DegreeProfile {
    /// Returns `(a, b)` when the right part is `a`-regular and the left part
    /// is `b`-regular.
    pub fn biregular(&self) -> Option<(usize, usize)> {
        let a = *self.right_degrees.first()?;
        let b = *self.left_degrees.first()?;
        if self.right_degrees.iter().all(|&d| d == a) && self.left_degrees.iter().all(|&d| d == b) {
            Some((a, b))
        } else {
            None
        }
    }

    pub fn edge_count(&self) -> usize {
        self.left_degrees.iter().sum()
    }
}

/// Girth of a graph: length of the shortest cycle, with an explicit sentinel
/// for forests.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Girth {
    Finite(usize),
    Infinite,
}

impl Girth {
    pub fn is_greater_than(self, k: usize) -> bool {
        match self {
            Girth::Finite(g) => g > k,
            Girth::Infinite => true,
        }
    }

    pub fn finite(self) -> Option<usize> {
        match self {
            Girth::Finite(g) => Some(g),
            Girth::Infinite => None,
        }
    }
}

impl PartialOrd for Girth {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Girth {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        match (self, other) {
            (Girth::Finite(a), Girth::Finite(b)) => a.cmp(b),
            (Girth::Finite(_), Girth::Infinite) => std::cmp::Ordering::Less,
            (Girth::Infinite, Girth::Finite(_)) => std::cmp::Ordering::Greater,
            (Girth::Infinite, Girth::Infinite) => std::cmp::Ordering::Equal,
        }
    }
}

impl std::fmt::Display for Girth {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Girth::Finite(g) => write!(f, "{g}"),
            Girth::Infinite => write!(f, "infinity"),
        }
    }
}

impl Serialize for Girth {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Girth::Finite(g) => s.serialize_u64(*g as u64),
            Girth::Infinite => s.serialize_str("infinity"),
        }
    }
}

impl<'de> Deserialize<'de> for Girth {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let v = serde_json::Value::deserialize(d)?;
        match v {
            serde_json::Value::Number(n) => n
                .as_u64()
                .map(|g| Girth::Finite(g as usize))
                .ok_or_else(|| D::Error::custom("girth must be a non-negative integer")),
            serde_json::Value::String(s) if s == "infinity" => Ok(Girth::Infinite),
            _ => Err(D::Error::custom("girth must be an integer or \"infinity\"")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graph_invariants() {
        let mut g = Graph::new(4);
        g.add_edge(0, 1);
        g.add_edge(0, 1);
        assert_eq!(g.edge_count(), 1);
        assert!(g.has_edge(1, 0));
        assert_eq!(g.try_add_edge(2, 2), Err(GraphError::SelfLoop(2)));
        assert!(g.try_add_edge(0, 7).is_err());
    }

    #[test]
    fn bipartite_edges_sorted() {
        let mut g = BipartiteGraph::new(2, 3);
        g.add_edge(1, 2);
        g.add_edge(0, 1);
        g.add_edge(1, 0);
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 1), (1, 0), (1, 2)]);
        assert_eq!(g.degree_profile().edge_count(), 3);
        let t = g.transpose();
        assert_eq!(t.left_count(), 3);
        assert!(t.has_edge(2, 1));
    }

    #[test]
    fn biregular_detection() {
        let g = BipartiteGraph::from_rows(&[vec![1, 1, 0], vec![0, 1, 1], vec![1, 0, 1]]);
        assert_eq!(g.degree_profile().biregular(), Some((2, 2)));
        let h = BipartiteGraph::from_rows(&[vec![1, 1, 1], vec![0, 1, 1]]);
        assert_eq!(h.degree_profile().biregular(), None);
    }

    #[test]
    fn girth_ordering() {
        assert!(Girth::Finite(6) < Girth::Infinite);
        assert!(Girth::Infinite.is_greater_than(1_000_000));
        assert!(Girth::Finite(12).is_greater_than(10));
        assert!(!Girth::Finite(6).is_greater_than(6));
    }
}
