//! Exact minimum vertex cover for graphs of at most 64 vertices, as the
//! complement of a maximum independent set found by branch and bound.

use alloc::vec::Vec;

use crate::graph::Graph;
use crate::{Error, Result};

pub const MAX_VERTICES: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexCover {
    pub size: usize,
    /// Sorted ascending.
    pub witness: Vec<usize>,
}

fn masks(graph: &Graph) -> Result<Vec<u64>> {
    let n = graph.order();
    if n > MAX_VERTICES {
        return Err(Error::SizeCap { n, cap: MAX_VERTICES });
    }
    Ok((0..n).map(|v| graph.neighbors(v).iter().fold(0u64, |m, w| m | 1 << w)).collect())
}

struct Search {
    /// Non-neighbours of each vertex: the independent set is a clique here.
    comp: Vec<u64>,
    best: u64,
    best_len: u32,
}

impl Search {
    /// Greedy colouring of `cand`; returns vertices in colour order with the
    /// running colour count, an upper bound on any clique among the prefix.
    fn colour(&self, mut cand: u64) -> (Vec<usize>, Vec<u32>) {
        let mut order = Vec::with_capacity(cand.count_ones() as usize);
        let mut bounds = Vec::with_capacity(order.capacity());
        let mut colour = 0;
        while cand != 0 {
            colour += 1;
            let mut avail = cand;
            while avail != 0 {
                let v = avail.trailing_zeros() as usize;
                avail &= !(1 << v);
                avail &= !self.comp[v];
                cand &= !(1 << v);
                order.push(v);
                bounds.push(colour);
            }
        }
        (order, bounds)
    }

    fn expand(&mut self, current: u64, mut cand: u64) {
        let (order, bounds) = self.colour(cand);
        for idx in (0..order.len()).rev() {
            if current.count_ones() + bounds[idx] <= self.best_len {
                return;
            }
            let v = order[idx];
            let next = current | 1 << v;
            let sub = cand & self.comp[v];
            if sub == 0 {
                if next.count_ones() > self.best_len {
                    self.best = next;
                    self.best_len = next.count_ones();
                }
            } else {
                self.expand(next, sub);
            }
            cand &= !(1 << v);
        }
    }
}

/// A maximum independent set, sorted ascending. Deterministic for a given
/// vertex numbering.
pub fn maximum_independent_set(graph: &Graph) -> Result<Vec<usize>> {
    let adj = masks(graph)?;
    let n = adj.len();
    if n == 0 {
        return Ok(Vec::new());
    }
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let comp = (0..n).map(|v| !adj[v] & all & !(1 << v)).collect();
    let mut search = Search { comp, best: 0, best_len: 0 };
    search.expand(0, all);
    Ok(bits(search.best))
}

fn bits(mut m: u64) -> Vec<usize> {
    let mut out = Vec::with_capacity(m.count_ones() as usize);
    while m != 0 {
        out.push(m.trailing_zeros() as usize);
        m &= m - 1;
    }
    out
}

/// `β(G)` with a witness cover.
pub fn min_vertex_cover(graph: &Graph) -> Result<VertexCover> {
    let independent = maximum_independent_set(graph)?;
    let witness: Vec<usize> = (0..graph.order()).filter(|v| independent.binary_search(v).is_err()).collect();
    Ok(VertexCover { size: witness.len(), witness })
}

pub fn is_vertex_cover(graph: &Graph, cover: &[usize]) -> bool {
    graph.edges().into_iter().all(|(a, b)| cover.contains(&a) || cover.contains(&b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn classical_values() {
        for n in 1..=10 {
            assert_eq!(min_vertex_cover(&Graph::complete(n)).unwrap().size, n - 1);
            assert_eq!(min_vertex_cover(&Graph::path(n)).unwrap().size, n / 2);
        }
        for n in 3..=10 {
            assert_eq!(min_vertex_cover(&Graph::cycle(n)).unwrap().size, n.div_ceil(2));
        }
        for m in 1..=9 {
            assert_eq!(min_vertex_cover(&Graph::star(m)).unwrap().witness, [0]);
        }
        assert_eq!(min_vertex_cover(&Graph::from_edges(0, &[]).unwrap()).unwrap().size, 0);
    }

    #[test]
    fn complete_graph_on_64_vertices() {
        let cover = min_vertex_cover(&Graph::complete(64)).unwrap();
        assert_eq!(cover.size, 63);
        assert!(matches!(min_vertex_cover(&Graph::complete(65)), Err(Error::SizeCap { n: 65, cap: 64 })));
    }

    fn brute_force(graph: &Graph) -> usize {
        let n = graph.order();
        (0u32..1 << n)
            .filter(|m| {
                let set: Vec<usize> = (0..n).filter(|v| m >> v & 1 == 1).collect();
                is_vertex_cover(graph, &set)
            })
            .map(u32::count_ones)
            .min()
            .unwrap() as usize
    }

    proptest! {
        #![proptest_config(ProptestConfig { cases: 96, rng_seed: proptest::test_runner::RngSeed::Fixed(11), ..ProptestConfig::default() })]
        #[test]
        fn matches_brute_force(n in 1usize..=11, seed_edges in proptest::collection::vec((0usize..11, 0usize..11), 0..30)) {
            let edges: Vec<(usize, usize)> = seed_edges.into_iter().filter(|(a, b)| a < b && *b < n).collect();
            let graph = Graph::from_edges(n, &edges).unwrap();
            let cover = min_vertex_cover(&graph).unwrap();
            prop_assert!(is_vertex_cover(&graph, &cover.witness));
            prop_assert_eq!(cover.size, brute_force(&graph));
        }
    }
}
