//! Power graphs of the family and of arbitrary Cayley tables, the
//! `{H0, H1, H2, H3}` partition, twin classes and the structural
//! decomposition check.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::bits::BitSet;
use crate::cayley::CayleyTable;
use crate::graph::{Graph, VertexLabel};
use crate::group::{GroupElement, GroupParams};
use crate::{Error, Result};

/// When two distinct elements `x`, `y` are joined.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum AdjacencyRule {
    /// `⟨x, y⟩` is cyclic, i.e. both lie in a common cyclic subgroup. This is
    /// the graph whose `⟨r⟩` part is complete, and the one every closed form
    /// in this crate describes.
    #[default]
    Cyclic,
    /// `x ∈ ⟨y⟩` or `y ∈ ⟨x⟩`.
    Power,
}

fn graph_from_subgroups(
    labels: Vec<VertexLabel>,
    subgroups: &[Vec<usize>],
    rule: AdjacencyRule,
) -> Graph {
    let n = labels.len();
    let mut adj = vec![BitSet::new(n); n];
    for (gen, sub) in subgroups.iter().enumerate() {
        match rule {
            AdjacencyRule::Power => {
                for &x in sub {
                    if x != gen {
                        adj[gen].insert(x);
                        adj[x].insert(gen);
                    }
                }
            }
            AdjacencyRule::Cyclic => {
                for &x in sub {
                    for &y in sub {
                        if x != y {
                            adj[x].insert(y);
                        }
                    }
                }
            }
        }
    }
    Graph::from_rows(labels, adj)
}

/// Graph on all elements of `𝒢` in the canonical vertex order
/// (`e`, `r`, …, `r^(N-1)`, then `H2`, then `H3`, exponents ascending).
pub fn build_power_graph(params: &GroupParams, rule: AdjacencyRule) -> Graph {
    let elements = params.elements();
    let subgroups: Vec<Vec<usize>> = elements
        .iter()
        .map(|&a| {
            params
                .cyclic_subgroup(a)
                .expect("element of this group")
                .into_iter()
                .map(|x| params.index_of(x).expect("closed under products"))
                .collect()
        })
        .collect();
    let labels = elements.into_iter().map(VertexLabel::Element).collect();
    graph_from_subgroups(labels, &subgroups, rule)
}

/// Same construction driven only by a multiplication table.
pub fn power_graph_from_table(
    table: &CayleyTable,
    labels: Vec<VertexLabel>,
    rule: AdjacencyRule,
) -> Result<Graph> {
    if labels.len() != table.order() {
        return Err(Error::DimensionMismatch(format!(
            "{} labels for a group of order {}",
            labels.len(),
            table.order()
        )));
    }
    let subgroups: Vec<Vec<usize>> = (0..table.order()).map(|a| table.cyclic_subgroup(a)).collect();
    Ok(graph_from_subgroups(labels, &subgroups, rule))
}

/// Index sets of the partition plus the two distinguished vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionClasses {
    pub e: usize,
    pub u: usize,
    /// `{e, u}`.
    pub h0: Vec<usize>,
    /// `⟨r⟩ ∖ {e, u}`.
    pub h1: Vec<usize>,
    /// `s r^(2t)`, the involutions outside `⟨r⟩`.
    pub h2: Vec<usize>,
    /// `s r^(2j+1)`, the elements of order 4 outside `⟨r⟩`.
    pub h3: Vec<usize>,
    /// `{s r^j, s r^(j+N/2)}` for odd `j < N/2`; each pair generates the same
    /// cyclic subgroup of order 4.
    pub h3_pairs: Vec<(usize, usize)>,
}

pub fn classify_partition(graph: &Graph, params: &GroupParams) -> Result<PartitionClasses> {
    let n = params.order() as usize;
    if graph.order() != n {
        return Err(Error::Classification(format!(
            "graph has {} vertices, group has order {n}",
            graph.order()
        )));
    }
    let mut position = BTreeMap::new();
    for v in 0..n {
        match graph.label(v) {
            VertexLabel::Element(a) if params.contains(*a) => {
                if position.insert(*a, v).is_some() {
                    return Err(Error::Classification(format!("element {a} appears twice")));
                }
            }
            other => {
                return Err(Error::Classification(format!(
                    "vertex {v} is labelled {other}, not an element of the group"
                )))
            }
        }
    }
    let half = params.cyclic_order() / 2;
    let at = |a: GroupElement| position[&a];
    let (e, u) = (at(params.identity()), at(params.u()));
    let mut classes = PartitionClasses {
        e,
        u,
        h0: vec![e, u],
        h1: vec![],
        h2: vec![],
        h3: vec![],
        h3_pairs: vec![],
    };
    for (a, &v) in &position {
        match (a.eps, a.i) {
            (0, 0) => {}
            (0, i) if i == half => {}
            (0, _) => classes.h1.push(v),
            (_, i) if i % 2 == 0 => classes.h2.push(v),
            (_, i) => {
                classes.h3.push(v);
                if i < half {
                    classes.h3_pairs.push((v, at(GroupElement::new(1, i + half))));
                }
            }
        }
    }
    for set in [&mut classes.h1, &mut classes.h2, &mut classes.h3] {
        set.sort_unstable();
    }
    classes.h3_pairs.sort_unstable();
    Ok(classes)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TwinKind {
    /// Pairwise non-adjacent members with equal open neighbourhoods.
    Open,
    /// Pairwise adjacent members with equal closed neighbourhoods.
    Closed,
    Singleton,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwinClass {
    pub kind: TwinKind,
    pub members: Vec<usize>,
}

impl TwinClass {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// Maximal twin classes, ordered by smallest member. Closed twins are grouped
/// first; the remaining vertices are grouped by open neighbourhood.
pub fn twin_classes(graph: &Graph) -> Vec<TwinClass> {
    let n = graph.order();
    let closed_nbhd = |v: usize| {
        let mut s = graph.neighbors(v).clone();
        s.insert(v);
        s
    };
    let mut by_closed: BTreeMap<BitSet, Vec<usize>> = BTreeMap::new();
    for v in 0..n {
        by_closed.entry(closed_nbhd(v)).or_default().push(v);
    }
    let mut assigned = vec![false; n];
    let mut classes = Vec::new();
    for members in by_closed.into_values().filter(|m| m.len() > 1) {
        members.iter().for_each(|&v| assigned[v] = true);
        classes.push(TwinClass { kind: TwinKind::Closed, members });
    }
    let mut by_open: BTreeMap<BitSet, Vec<usize>> = BTreeMap::new();
    for v in (0..n).filter(|&v| !assigned[v]) {
        by_open.entry(graph.neighbors(v).clone()).or_default().push(v);
    }
    for members in by_open.into_values() {
        let kind = if members.len() > 1 { TwinKind::Open } else { TwinKind::Singleton };
        classes.push(TwinClass { kind, members });
    }
    classes.sort_by_key(|c| c.members[0]);
    classes
}

/// Class index of every vertex.
pub fn twin_class_index(classes: &[TwinClass], n: usize) -> Vec<usize> {
    let mut idx = vec![usize::MAX; n];
    for (c, class) in classes.iter().enumerate() {
        for &v in &class.members {
            idx[v] = c;
        }
    }
    idx
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecompositionReport {
    /// Edges the decomposition requires but the graph lacks.
    pub missing: Vec<(usize, usize)>,
    /// Edges of the graph not covered by any piece.
    pub extra: Vec<(usize, usize)>,
}

impl DecompositionReport {
    pub fn holds(&self) -> bool {
        self.missing.is_empty() && self.extra.is_empty()
    }
}

/// Checks that the edge set is exactly the union of a clique on `⟨r⟩`,
/// a pendant edge `e – h` for each `h ∈ H2`, and a `K₄` on `{e, u, a, b}`
/// for each `H3` pair `{a, b}` (pieces share the vertices `e` and `u`).
pub fn verify_decomposition(graph: &Graph, classes: &PartitionClasses) -> DecompositionReport {
    let n = graph.order();
    let mut expected = vec![BitSet::new(n); n];
    let mut join = |a: usize, b: usize| {
        expected[a].insert(b);
        expected[b].insert(a);
    };
    let cyclic: Vec<usize> = classes.h0.iter().chain(&classes.h1).copied().collect();
    for (i, &a) in cyclic.iter().enumerate() {
        for &b in &cyclic[i + 1..] {
            join(a, b);
        }
    }
    for &h in &classes.h2 {
        join(classes.e, h);
    }
    for &(a, b) in &classes.h3_pairs {
        let quad = [classes.e, classes.u, a, b];
        for i in 0..4 {
            for j in i + 1..4 {
                join(quad[i], quad[j]);
            }
        }
    }
    let mut report = DecompositionReport { missing: vec![], extra: vec![] };
    for a in 0..n {
        for b in a + 1..n {
            match (expected[a].contains(b), graph.has_edge(a, b)) {
                (true, false) => report.missing.push((a, b)),
                (false, true) => report.extra.push((a, b)),
                _ => {}
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cayley::DEFAULT_CAP;

    fn family(k: u32, p: u64) -> (GroupParams, Graph) {
        let g = GroupParams::new(k, p).unwrap();
        let graph = build_power_graph(&g, AdjacencyRule::Cyclic);
        (g, graph)
    }

    #[test]
    fn degrees_k2_p3() {
        let (g, graph) = family(2, 3);
        let c = classify_partition(&graph, &g).unwrap();
        assert_eq!(graph.degree(c.e), 23);
        assert_eq!(graph.degree(c.u), 17);
        assert!(c.h1.iter().all(|&v| graph.degree(v) == 11));
        assert!(c.h2.iter().all(|&v| graph.degree(v) == 1));
        assert!(c.h3.iter().all(|&v| graph.degree(v) == 3));
        assert_eq!(graph.edge_count(), 87);
    }

    #[test]
    fn literal_power_rule_leaves_cyclic_part_incomplete() {
        let g = GroupParams::new(2, 3).unwrap();
        let graph = build_power_graph(&g, AdjacencyRule::Power);
        assert_eq!(graph.edge_count(), 77);
        // r^3 has order 4 and r^4 has order 3: neither is a power of the other.
        assert!(!graph.has_edge(3, 4));
        let c = classify_partition(&graph, &g).unwrap();
        assert!(!verify_decomposition(&graph, &c).holds());
        // Outside ⟨r⟩ the two rules agree.
        let cyclic = build_power_graph(&g, AdjacencyRule::Cyclic);
        for &h in c.h2.iter().chain(&c.h3) {
            assert_eq!(graph.neighbors(h), cyclic.neighbors(h));
        }
    }

    #[test]
    fn partition_sizes() {
        for (k, p) in [(2, 3), (2, 5), (3, 3), (3, 7)] {
            let (g, graph) = family(k, p);
            let c = classify_partition(&graph, &g).unwrap();
            let n = g.cyclic_order() as usize;
            assert_eq!(c.h0.len(), 2);
            assert_eq!(c.h1.len(), n - 2);
            assert_eq!(c.h2.len(), n / 2);
            assert_eq!(c.h3.len(), n / 2);
            assert_eq!(c.h3_pairs.len(), n / 4);
            assert_eq!(c.h0.len() + c.h1.len() + c.h2.len() + c.h3.len(), 2 * n);
        }
        let (g, graph) = family(2, 3);
        let c = classify_partition(&graph, &g).unwrap();
        assert_eq!(*graph.label(c.u), VertexLabel::Element(GroupElement::new(0, 6)));
        let (g, graph) = family(2, 5);
        assert_eq!(classify_partition(&graph, &g).unwrap().h2.len(), 10);
    }

    #[test]
    fn classification_rejects_foreign_graphs() {
        let g = GroupParams::new(2, 3).unwrap();
        assert!(classify_partition(&Graph::complete(24), &g).is_err());
        assert!(classify_partition(&Graph::complete(3), &g).is_err());
    }

    #[test]
    fn twin_classes_k2_p3() {
        let (g, graph) = family(2, 3);
        let c = classify_partition(&graph, &g).unwrap();
        let classes = twin_classes(&graph);
        let find = |v: usize| classes.iter().find(|t| t.members.contains(&v)).unwrap();
        let pendants = find(c.h2[0]);
        assert_eq!((pendants.kind, pendants.len()), (TwinKind::Open, 6));
        let clique = find(c.h1[0]);
        assert_eq!((clique.kind, clique.members.clone()), (TwinKind::Closed, c.h1.clone()));
        for &(a, b) in &c.h3_pairs {
            assert_eq!(find(a).kind, TwinKind::Closed);
            assert_eq!(find(a).members, vec![a, b]);
        }
        assert_eq!(find(c.e).kind, TwinKind::Singleton);
        assert_eq!(find(c.u).kind, TwinKind::Singleton);
        assert_eq!(classes.len(), 1 + 1 + 1 + 1 + 3);
    }

    #[test]
    fn twin_classes_small_graphs() {
        let k3 = twin_classes(&Graph::complete(3));
        assert_eq!(k3, vec![TwinClass { kind: TwinKind::Closed, members: vec![0, 1, 2] }]);
        let p4 = twin_classes(&Graph::path(4));
        assert!(p4.iter().all(|c| c.kind == TwinKind::Singleton));
        let star = twin_classes(&Graph::star(3));
        assert_eq!(star[1], TwinClass { kind: TwinKind::Open, members: vec![1, 2, 3] });
    }

    #[test]
    fn decomposition_holds_for_the_family() {
        for (k, p) in [(2, 3), (2, 5), (3, 3)] {
            let (g, graph) = family(k, p);
            let c = classify_partition(&graph, &g).unwrap();
            assert!(verify_decomposition(&graph, &c).holds(), "k={k} p={p}");
        }
        let (g, graph) = family(2, 3);
        let c = classify_partition(&graph, &g).unwrap();
        let (a, b) = c.h3_pairs[0];
        assert!(graph.induced_is_complete(&[c.e, c.u, a, b]));
    }

    #[test]
    fn table_oracle_builds_the_same_graph() {
        for (k, p) in [(2, 3), (2, 5), (3, 3)] {
            let g = GroupParams::new(k, p).unwrap();
            let (table, els) = CayleyTable::for_family(&g, DEFAULT_CAP).unwrap();
            let labels: Vec<_> = els.into_iter().map(VertexLabel::Element).collect();
            for rule in [AdjacencyRule::Cyclic, AdjacencyRule::Power] {
                let oracle = power_graph_from_table(&table, labels.clone(), rule).unwrap();
                assert_eq!(oracle, build_power_graph(&g, rule));
            }
        }
    }

    #[test]
    fn cyclic_groups_of_prime_power_order_give_complete_power_graphs() {
        let labels = |n: usize| (0..n).map(|i| VertexLabel::Opaque(alloc::format!("{i}"))).collect();
        let z8 = power_graph_from_table(&CayleyTable::cyclic(8), labels(8), AdjacencyRule::Power)
            .unwrap();
        assert_eq!(z8.edge_count(), 28);
        let z6 = power_graph_from_table(&CayleyTable::cyclic(6), labels(6), AdjacencyRule::Power)
            .unwrap();
        assert!(z6.edge_count() < 15);
        let z6c = power_graph_from_table(&CayleyTable::cyclic(6), labels(6), AdjacencyRule::Cyclic)
            .unwrap();
        assert_eq!(z6c.edge_count(), 15);
    }

    #[test]
    fn identity_is_universal() {
        let d = CayleyTable::dihedral(5);
        let labels = (0..10).map(|i| VertexLabel::Opaque(alloc::format!("{i}"))).collect();
        let graph = power_graph_from_table(&d, labels, AdjacencyRule::Power).unwrap();
        assert_eq!(graph.degree(0), 9);
    }
}
