//! Matrix representations of a graph: `A`, `D`, `L`, `Q`, `A_α`, shortest-path
//! distances, the Harary matrix `RD`, reciprocal transmissions `RT`, `RD_α`
//! and detour distances.

use alloc::vec::Vec;

use crate::detour::{self, DetourOptions};
use crate::graph::Graph;
use crate::matrix::{Alpha, DenseSymMatrix};
use crate::{Error, Result};

pub fn adjacency(graph: &Graph) -> DenseSymMatrix {
    let mut m = DenseSymMatrix::zeros(graph.order());
    for (a, b) in graph.edges() {
        m.set(a, b, 1.0);
    }
    m
}

pub fn degree_diag(graph: &Graph) -> DenseSymMatrix {
    let degrees: Vec<f64> = graph.degrees().into_iter().map(|d| d as f64).collect();
    DenseSymMatrix::diagonal(&degrees)
}

/// `L = D − A`, positive semidefinite. With this sign `A_α − A_β = (α − β) L`.
pub fn laplacian(graph: &Graph) -> DenseSymMatrix {
    degree_diag(graph).combine(1.0, &adjacency(graph), -1.0).expect("same order")
}

pub fn signless_laplacian(graph: &Graph) -> DenseSymMatrix {
    degree_diag(graph).combine(1.0, &adjacency(graph), 1.0).expect("same order")
}

/// `A_α = α D + (1 − α) A`.
pub fn a_alpha(graph: &Graph, alpha: Alpha) -> DenseSymMatrix {
    let a = alpha.get();
    degree_diag(graph).combine(a, &adjacency(graph), 1.0 - a).expect("same order")
}

/// Integer path lengths between every pair of vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceMatrix {
    n: usize,
    d: Vec<u32>,
}

impl DistanceMatrix {
    pub(crate) fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> u32) -> Self {
        let mut d = alloc::vec![0; n * n];
        for i in 0..n {
            for j in i + 1..n {
                let v = f(i, j);
                d[i * n + j] = v;
                d[j * n + i] = v;
            }
        }
        DistanceMatrix { n, d }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.d[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.d[i * self.n..(i + 1) * self.n]
    }

    pub fn to_dense(&self) -> DenseSymMatrix {
        let mut m = DenseSymMatrix::zeros(self.n);
        for i in 0..self.n {
            for j in i + 1..self.n {
                m.set(i, j, self.get(i, j) as f64);
            }
        }
        m
    }
}

/// Breadth-first shortest-path distances. The graph must be connected.
pub fn distance_matrix(graph: &Graph) -> Result<DistanceMatrix> {
    let n = graph.order();
    let mut rows = Vec::with_capacity(n);
    for v in 0..n {
        let row: Option<Vec<u32>> = graph.bfs(v).into_iter().collect();
        rows.push(row.ok_or(Error::Disconnected)?);
    }
    Ok(DistanceMatrix::from_fn(n, |i, j| rows[i][j]))
}

/// Harary matrix: `1/d(i, j)` off the diagonal, zero on it.
pub fn reciprocal_distance(dist: &DistanceMatrix) -> DenseSymMatrix {
    let n = dist.order();
    let mut m = DenseSymMatrix::zeros(n);
    for i in 0..n {
        for j in i + 1..n {
            m.set(i, j, 1.0 / dist.get(i, j) as f64);
        }
    }
    m
}

/// Diagonal of the row sums of the Harary matrix.
pub fn reciprocal_transmission(dist: &DistanceMatrix) -> DenseSymMatrix {
    let rd = reciprocal_distance(dist);
    let sums: Vec<f64> = (0..rd.dim()).map(|i| rd.row(i).iter().sum()).collect();
    DenseSymMatrix::diagonal(&sums)
}

/// `RD_α = α RT + (1 − α) RD`.
pub fn rd_alpha(dist: &DistanceMatrix, alpha: Alpha) -> DenseSymMatrix {
    let a = alpha.get();
    reciprocal_transmission(dist)
        .combine(a, &reciprocal_distance(dist), 1.0 - a)
        .expect("same order")
}

/// Longest simple path lengths between every pair; see [`detour`].
pub fn detour_matrix(graph: &Graph, options: &mut DetourOptions<'_>) -> Result<DistanceMatrix> {
    detour::detour_matrix(graph, options)
}
