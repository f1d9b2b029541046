//! Resolving sets, metric dimension and strong metric dimension.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use crate::graph::Graph;
use crate::matrices::{distance_matrix, DistanceMatrix};
use crate::power_graph::twin_classes;
use crate::vertex_cover::{min_vertex_cover, VertexCover};
use crate::{Error, Result};

/// Largest order for which subsets are enumerated.
pub const EXHAUSTIVE_MAX: usize = 12;

/// True iff the distance vectors to `set` are pairwise distinct.
pub fn resolve_check(dist: &DistanceMatrix, set: &[usize]) -> bool {
    let mut seen = BTreeSet::new();
    (0..dist.order()).all(|v| seen.insert(set.iter().map(|&w| dist.get(v, w)).collect::<Vec<u32>>()))
}

/// A resolving set may leave out at most one vertex of each twin class.
pub fn twin_lower_bound(graph: &Graph) -> usize {
    twin_classes(graph).iter().map(|c| c.len() - 1).sum()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum WitnessSource {
    /// Handed in by the caller, e.g. a construction for a known family.
    Supplied,
    /// Every vertex except the last of each twin class.
    TwinTransversal,
    /// Smallest resolving set found by subset enumeration.
    Exhaustive,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResolvingReport {
    pub lower_bound: usize,
    /// Sorted ascending.
    pub witness: Vec<usize>,
    pub resolved: bool,
    pub source: WitnessSource,
    /// Exact value once the bound meets a verified witness, or the search was
    /// exhaustive.
    pub psi: Option<usize>,
}

impl ResolvingReport {
    pub fn certified(&self) -> bool {
        self.psi.is_some()
    }
}

fn twin_transversal(graph: &Graph) -> Vec<usize> {
    let mut keep: Vec<usize> =
        twin_classes(graph).into_iter().flat_map(|c| c.members[..c.members.len() - 1].to_vec()).collect();
    let in_class: BTreeSet<usize> = twin_classes(graph).into_iter().flat_map(|c| c.members).collect();
    keep.extend((0..graph.order()).filter(|v| !in_class.contains(v)));
    keep.sort_unstable();
    keep
}

/// Metric dimension.
///
/// A `candidate` witness is verified, never trusted. Without a certified
/// candidate, graphs of order at most [`EXHAUSTIVE_MAX`] are searched
/// exhaustively; larger graphs only succeed when the twin transversal
/// resolves, in which case it meets the twin bound.
pub fn metric_dimension(graph: &Graph, candidate: Option<&[usize]>) -> Result<ResolvingReport> {
    let dist = distance_matrix(graph)?;
    let lower_bound = twin_lower_bound(graph);
    let report = |mut witness: Vec<usize>, source, exact: bool| {
        witness.sort_unstable();
        witness.dedup();
        let resolved = resolve_check(&dist, &witness);
        let psi = (resolved && (exact || witness.len() == lower_bound)).then_some(witness.len());
        ResolvingReport { lower_bound, witness, resolved, source, psi }
    };

    let mut fallback = None;
    if let Some(c) = candidate {
        if c.iter().any(|&v| v >= graph.order()) {
            return Err(Error::DimensionMismatch("witness vertex out of range".into()));
        }
        let r = report(c.to_vec(), WitnessSource::Supplied, false);
        if r.certified() {
            return Ok(r);
        }
        fallback = Some(r);
    }
    let r = report(twin_transversal(graph), WitnessSource::TwinTransversal, false);
    if r.certified() {
        return Ok(r);
    }
    if graph.order() <= EXHAUSTIVE_MAX {
        let witness = exhaustive(graph, &dist, lower_bound);
        return Ok(report(witness, WitnessSource::Exhaustive, true));
    }
    match fallback {
        Some(r) if r.resolved => Ok(r),
        _ => Err(Error::SizeCap { n: graph.order(), cap: EXHAUSTIVE_MAX }),
    }
}

/// Smallest resolving set, by size then lexicographically.
fn exhaustive(graph: &Graph, dist: &DistanceMatrix, start: usize) -> Vec<usize> {
    let n = graph.order();
    let classes: Vec<u32> = twin_classes(graph)
        .into_iter()
        .map(|c| c.members.iter().fold(0u32, |m, &v| m | 1 << v))
        .collect();
    let full = (1u32 << n) - 1;
    let admissible = |set: u32| classes.iter().all(|&c| (c & !set).count_ones() <= 1);
    for size in start.max(usize::from(n > 1))..=n {
        let mut set: u32 = if size == 0 { 0 } else { (1 << size) - 1 };
        loop {
            if admissible(set) {
                let members: Vec<usize> = (0..n).filter(|v| set >> v & 1 == 1).collect();
                if resolve_check(dist, &members) {
                    return members;
                }
            }
            if set == 0 || set & full == full {
                break;
            }
            // Next subset of the same size in colexicographic order.
            let low = set & set.wrapping_neg();
            let ripple = set + low;
            set = ripple | (((set ^ ripple) >> 2) / low);
            if set > full {
                break;
            }
        }
    }
    (0..n).collect()
}

/// `u` is maximally distant from `v` when no neighbour of `u` is farther
/// from `v`.
pub fn maximally_distant(graph: &Graph, dist: &DistanceMatrix, u: usize, v: usize) -> bool {
    let d = dist.get(u, v);
    graph.neighbors(u).iter().all(|x| dist.get(v, x) <= d)
}

/// The strong resolving graph: same vertices, edges between mutually
/// maximally distant pairs.
pub fn mmd_graph(graph: &Graph, dist: &DistanceMatrix) -> Graph {
    let n = graph.order();
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if maximally_distant(graph, dist, u, v) && maximally_distant(graph, dist, v, u) {
                edges.push((u, v));
            }
        }
    }
    Graph::with_labels(graph.labels().to_vec(), &edges).expect("pairs are distinct and in range")
}

#[derive(Clone, Debug, PartialEq)]
pub struct StrongReport {
    pub sdim: usize,
    pub cover: VertexCover,
    pub resolving_graph: Graph,
}

/// `sdim(G) = β(G_SR)`.
pub fn strong_metric_dimension(graph: &Graph) -> Result<StrongReport> {
    let dist = distance_matrix(graph)?;
    let resolving_graph = mmd_graph(graph, &dist);
    let cover = min_vertex_cover(&resolving_graph)?;
    Ok(StrongReport { sdim: cover.size, cover, resolving_graph })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::GroupParams;
    use crate::power_graph::{build_power_graph, classify_partition, AdjacencyRule};
    use proptest::prelude::*;

    fn psi(graph: &Graph) -> usize {
        let r = metric_dimension(graph, None).unwrap();
        assert!(r.resolved);
        r.psi.unwrap()
    }

    #[test]
    fn classical_metric_dimensions() {
        for n in 2..=10 {
            assert_eq!(psi(&Graph::path(n)), 1, "P{n}");
            assert_eq!(psi(&Graph::complete(n)), n - 1, "K{n}");
        }
        for n in 3..=10 {
            assert_eq!(psi(&Graph::cycle(n)), 2, "C{n}");
        }
        for m in 2..=9 {
            assert_eq!(psi(&Graph::star(m)), m - 1, "K1,{m}");
        }
        assert_eq!(psi(&Graph::path(1)), 0);
    }

    #[test]
    fn exhaustive_search_is_exact_on_c5() {
        let r = metric_dimension(&Graph::cycle(5), None).unwrap();
        assert_eq!(r.source, WitnessSource::Exhaustive);
        assert_eq!((r.lower_bound, r.psi), (0, Some(2)));
    }

    #[test]
    fn path_end_resolves() {
        let g = Graph::path(4);
        let d = distance_matrix(&g).unwrap();
        assert!(resolve_check(&d, &[0]));
        assert!(!resolve_check(&d, &[1]));
        assert_eq!(twin_lower_bound(&g), 0);
        assert_eq!(twin_lower_bound(&Graph::complete(6)), 5);
    }

    #[test]
    fn large_graph_without_certificate_is_refused() {
        assert!(matches!(metric_dimension(&Graph::cycle(13), None), Err(Error::SizeCap { n: 13, cap: 12 })));
        // K13: the twin transversal meets the bound.
        let r = metric_dimension(&Graph::complete(13), None).unwrap();
        assert_eq!((r.source, r.psi), (WitnessSource::TwinTransversal, Some(12)));
    }

    #[test]
    fn classical_strong_metric_dimensions() {
        for n in 2..=10 {
            assert_eq!(strong_metric_dimension(&Graph::complete(n)).unwrap().sdim, n - 1);
            assert_eq!(strong_metric_dimension(&Graph::path(n)).unwrap().sdim, 1);
        }
        let p3 = strong_metric_dimension(&Graph::path(3)).unwrap();
        assert_eq!(p3.resolving_graph.edges(), [(0, 2)]);
        let k = Graph::complete(5);
        assert_eq!(mmd_graph(&k, &distance_matrix(&k).unwrap()).edge_count(), 10);
    }

    #[test]
    fn family_resolving_graph_k2_p3() {
        let params = GroupParams::new(2, 3).unwrap();
        let graph = build_power_graph(&params, AdjacencyRule::Cyclic);
        let classes = classify_partition(&graph, &params).unwrap();
        let strong = strong_metric_dimension(&graph).unwrap();
        let gsr = &strong.resolving_graph;
        assert_eq!(gsr.degree(classes.e), 0);
        let rest: Vec<usize> = (0..24).filter(|&v| v != classes.e && v != classes.u).collect();
        assert!(gsr.induced_is_complete(&rest));
        let mut u_nbrs: Vec<usize> = gsr.neighbors(classes.u).iter().collect();
        // Pendants sit at distance 2 from u and see only e; H3 is adjacent to u.
        let mut h2 = classes.h2.clone();
        u_nbrs.sort_unstable();
        h2.sort_unstable();
        assert_eq!(u_nbrs, h2);
        assert_eq!(gsr.edge_count(), 22 * 21 / 2 + 6);
        assert_eq!(strong.sdim, 21);
        assert!(crate::vertex_cover::is_vertex_cover(gsr, &strong.cover.witness));
    }

    fn arb_connected() -> impl Strategy<Value = Graph> {
        (2usize..=9).prop_flat_map(|n| {
            (Just(n), proptest::collection::vec(0usize..1000, n - 1), proptest::collection::vec(any::<bool>(), n * (n - 1) / 2))
        })
        .prop_map(|(n, parents, extra)| {
            // Random spanning tree plus random extra edges.
            let mut edges: Vec<(usize, usize)> = (1..n).map(|v| (parents[v - 1] % v, v)).collect();
            let mut idx = 0;
            for a in 0..n {
                for b in a + 1..n {
                    if extra[idx] && !edges.contains(&(a, b)) {
                        edges.push((a, b));
                    }
                    idx += 1;
                }
            }
            Graph::from_edges(n, &edges).unwrap()
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig { cases: 64, rng_seed: proptest::test_runner::RngSeed::Fixed(5), ..ProptestConfig::default() })]
        #[test]
        fn full_vertex_set_resolves_and_bound_holds(g in arb_connected()) {
            let d = distance_matrix(&g).unwrap();
            let all: Vec<usize> = (0..g.order()).collect();
            prop_assert!(resolve_check(&d, &all));
            let r = metric_dimension(&g, None).unwrap();
            prop_assert!(r.lower_bound <= r.psi.unwrap());
        }

        #[test]
        fn mmd_graph_commutes_with_relabelling(g in arb_connected(), keys in proptest::collection::vec(any::<u32>(), 9)) {
            let n = g.order();
            let mut perm: Vec<usize> = (0..n).collect();
            perm.sort_by_key(|&i| (keys[i], i));
            let h = g.permuted(&perm);
            let gsr = mmd_graph(&g, &distance_matrix(&g).unwrap());
            let hsr = mmd_graph(&h, &distance_matrix(&h).unwrap());
            prop_assert_eq!(gsr.permuted(&perm).edges(), hsr.edges());
        }
    }
}
