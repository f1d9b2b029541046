//! Simple undirected graphs with labelled vertices.

use alloc::collections::VecDeque;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::bits::BitSet;
use crate::group::GroupElement;
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum VertexLabel {
    Element(GroupElement),
    Opaque(String),
}

impl fmt::Display for VertexLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VertexLabel::Element(e) => e.fmt(f),
            VertexLabel::Opaque(s) => f.write_str(s),
        }
    }
}

/// Symmetric adjacency without loops. Immutable once built.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    labels: Vec<VertexLabel>,
    adj: Vec<BitSet>,
}

impl Graph {
    /// Graph with opaque labels `"0"`, `"1"`, … and the given edges.
    /// Self-loops are rejected; duplicate edges are merged.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let labels = (0..n).map(|i| VertexLabel::Opaque(i.to_string())).collect();
        Self::with_labels(labels, edges)
    }

    pub fn with_labels(labels: Vec<VertexLabel>, edges: &[(usize, usize)]) -> Result<Self> {
        let n = labels.len();
        let mut adj = vec![BitSet::new(n); n];
        for &(a, b) in edges {
            if a >= n || b >= n {
                return Err(Error::DimensionMismatch(alloc::format!(
                    "edge ({a}, {b}) out of range for {n} vertices"
                )));
            }
            if a == b {
                return Err(Error::DimensionMismatch(alloc::format!("self-loop at {a}")));
            }
            adj[a].insert(b);
            adj[b].insert(a);
        }
        Ok(Graph { labels, adj })
    }

    pub(crate) fn from_rows(labels: Vec<VertexLabel>, adj: Vec<BitSet>) -> Self {
        debug_assert!(adj.iter().enumerate().all(|(i, row)| !row.contains(i)
            && row.iter().all(|j| adj[j].contains(i))));
        Graph { labels, adj }
    }

    pub fn complete(n: usize) -> Self {
        let edges: Vec<_> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
        Self::from_edges(n, &edges).expect("valid edges")
    }

    pub fn path(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Self::from_edges(n, &edges).expect("valid edges")
    }

    pub fn cycle(n: usize) -> Self {
        let mut edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        if n > 2 {
            edges.push((n - 1, 0));
        }
        Self::from_edges(n, &edges).expect("valid edges")
    }

    /// `K_{1,m}` with the centre at vertex 0.
    pub fn star(m: usize) -> Self {
        let edges: Vec<_> = (1..=m).map(|i| (0, i)).collect();
        Self::from_edges(m + 1, &edges).expect("valid edges")
    }

    pub fn order(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[VertexLabel] {
        &self.labels
    }

    pub fn label(&self, v: usize) -> &VertexLabel {
        &self.labels[v]
    }

    #[inline]
    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adj[a].contains(b)
    }

    pub fn neighbors(&self, v: usize) -> &BitSet {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count()
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.order()).map(|v| self.degree(v)).collect()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(BitSet::count).sum::<usize>() / 2
    }

    /// Edges `(i, j)` with `i < j`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.order())
            .flat_map(|a| self.adj[a].iter().filter(move |&b| b > a).map(move |b| (a, b)))
            .collect()
    }

    /// Breadth-first distances from `src`; `None` marks unreachable vertices.
    pub fn bfs(&self, src: usize) -> Vec<Option<u32>> {
        let mut dist = vec![None; self.order()];
        dist[src] = Some(0);
        let mut queue = VecDeque::from([src]);
        while let Some(v) = queue.pop_front() {
            let d = dist[v].unwrap_or(0);
            for w in self.adj[v].iter() {
                if dist[w].is_none() {
                    dist[w] = Some(d + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    pub fn is_connected(&self) -> bool {
        self.order() == 0 || self.bfs(0).iter().all(Option::is_some)
    }

    pub fn induced_is_complete(&self, vertices: &[usize]) -> bool {
        vertices
            .iter()
            .enumerate()
            .all(|(i, &a)| vertices[i + 1..].iter().all(|&b| self.has_edge(a, b)))
    }

    /// Relabels vertex `v` as `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        let n = self.order();
        let mut labels = self.labels.clone();
        for v in 0..n {
            labels[perm[v]] = self.labels[v].clone();
        }
        let edges: Vec<_> = self.edges().into_iter().map(|(a, b)| (perm[a], perm[b])).collect();
        Self::with_labels(labels, &edges).expect("permutation keeps edges valid")
    }
}
