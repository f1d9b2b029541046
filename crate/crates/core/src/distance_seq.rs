//! Eccentricities and distance degree sequences, for either shortest-path or
//! detour distances.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::matrices::DistanceMatrix;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EccentricityProfile {
    pub eccentricity: Vec<u32>,
    pub radius: u32,
    pub diameter: u32,
}

/// `ec(v)` is the largest entry of row `v`; radius and diameter are the
/// extremes over all vertices. Empty graphs report zeros.
pub fn eccentricity_profile(dist: &DistanceMatrix) -> EccentricityProfile {
    let eccentricity: Vec<u32> =
        (0..dist.order()).map(|v| dist.row(v).iter().copied().max().unwrap_or(0)).collect();
    EccentricityProfile {
        radius: eccentricity.iter().copied().min().unwrap_or(0),
        diameter: eccentricity.iter().copied().max().unwrap_or(0),
        eccentricity,
    }
}

/// Same computation on a detour matrix.
pub fn detour_profile(detour: &DistanceMatrix) -> EccentricityProfile {
    eccentricity_profile(detour)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SequenceGroup {
    pub sequence: Vec<usize>,
    /// Ascending.
    pub vertices: Vec<usize>,
}

/// Per-vertex counts of vertices at each distance `0..=ec(v)`, stored densely
/// so interior zero runs keep their positions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeSequenceTable {
    rows: Vec<Vec<usize>>,
}

impl DegreeSequenceTable {
    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    pub fn row(&self, v: usize) -> &[usize] {
        &self.rows[v]
    }

    /// Vertices grouped by identical sequence, ordered by sequence.
    pub fn groups(&self) -> Vec<SequenceGroup> {
        let mut map: BTreeMap<&[usize], Vec<usize>> = BTreeMap::new();
        for (v, row) in self.rows.iter().enumerate() {
            map.entry(row.as_slice()).or_default().push(v);
        }
        map.into_iter().map(|(s, vertices)| SequenceGroup { sequence: s.to_vec(), vertices }).collect()
    }
}

pub fn degree_sequences(dist: &DistanceMatrix) -> DegreeSequenceTable {
    let rows = (0..dist.order())
        .map(|v| {
            let row = dist.row(v);
            let mut seq = vec![0usize; row.iter().copied().max().unwrap_or(0) as usize + 1];
            for &d in row {
                seq[d as usize] += 1;
            }
            seq
        })
        .collect();
    DegreeSequenceTable { rows }
}

/// `dds` from the shortest-path distance matrix.
pub fn dds(dist: &DistanceMatrix) -> DegreeSequenceTable {
    degree_sequences(dist)
}

/// `dds_D` from the detour matrix.
pub fn dds_detour(detour: &DistanceMatrix) -> DegreeSequenceTable {
    degree_sequences(detour)
}

/// `(1, 6, 0^9, 1, 0, 16)`: runs of two or more equal entries collapse to
/// `value^count`.
pub fn compact(seq: &[usize]) -> String {
    let mut parts = Vec::new();
    let mut i = 0;
    while i < seq.len() {
        let run = seq[i..].iter().take_while(|&&x| x == seq[i]).count();
        parts.push(if run > 1 { format!("{}^{}", seq[i], run) } else { format!("{}", seq[i]) });
        i += run;
    }
    format!("({})", parts.join(", "))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::detour::DetourOptions;
    use crate::graph::Graph;
    use crate::group::GroupParams;
    use crate::matrices::{detour_matrix, distance_matrix};
    use crate::power_graph::{build_power_graph, twin_classes, AdjacencyRule};
    use proptest::prelude::*;

    #[test]
    fn small_graphs() {
        let k4 = Graph::complete(4);
        let p3 = Graph::path(3);
        let d4 = detour_matrix(&k4, &mut DetourOptions::default()).unwrap();
        assert_eq!(detour_profile(&d4).eccentricity, [3; 4]);
        let prof = eccentricity_profile(&distance_matrix(&p3).unwrap());
        assert_eq!((prof.radius, prof.diameter), (1, 2));
        let dp3 = detour_matrix(&p3, &mut DetourOptions::default()).unwrap();
        assert_eq!(detour_profile(&dp3), prof);
        assert_eq!(eccentricity_profile(&distance_matrix(&k4).unwrap()).eccentricity, [1; 4]);
    }

    #[test]
    fn compact_notation() {
        assert_eq!(compact(&[1, 6, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 16]), "(1, 6, 0^9, 1, 0, 16)");
        assert_eq!(compact(&[1, 1, 5]), "(1^2, 5)");
        assert_eq!(compact(&[]), "()");
    }

    #[test]
    fn family_tables_k2_p3() {
        let params = GroupParams::new(2, 3).unwrap();
        let graph = build_power_graph(&params, AdjacencyRule::Cyclic);
        let dist = distance_matrix(&graph).unwrap();
        let detour = detour_matrix(&graph, &mut DetourOptions::default()).unwrap();
        let table = dds(&dist);
        let table_d = dds_detour(&detour);
        let ecc = eccentricity_profile(&dist);
        let ecc_d = detour_profile(&detour);
        assert_eq!((ecc.radius, ecc.diameter, ecc_d.radius, ecc_d.diameter), (1, 2, 13, 15));
        for v in 0..graph.order() {
            assert_eq!(table.row(v).iter().sum::<usize>(), 24);
            assert_eq!(table_d.row(v).iter().sum::<usize>(), 24);
            assert_eq!(table.row(v)[0], 1);
            assert_eq!(table.row(v)[1], graph.degree(v));
            assert_eq!(table_d.row(v).len() as u32 - 1, ecc_d.eccentricity[v]);
        }
        for class in twin_classes(&graph) {
            let first = class.members[0];
            for &v in &class.members {
                assert_eq!(table.row(v), table.row(first));
                assert_eq!(table_d.row(v), table_d.row(first));
            }
        }
        let shapes: Vec<(String, usize)> =
            table.groups().iter().map(|g| (compact(&g.sequence), g.vertices.len())).collect();
        assert_eq!(
            shapes,
            [
                ("(1^2, 22)".into(), 6),
                ("(1, 3, 20)".into(), 6),
                ("(1, 11, 12)".into(), 10),
                ("(1, 17, 6)".into(), 1),
                ("(1, 23)".into(), 1)
            ]
        );
    }

    proptest! {
        #![proptest_config(ProptestConfig { cases: 64, rng_seed: proptest::test_runner::RngSeed::Fixed(3), ..ProptestConfig::default() })]
        #[test]
        fn metric_radius_bounds(n in 2usize..=10, parents in proptest::collection::vec(0usize..1000, 9), extra in proptest::collection::vec((0usize..10, 0usize..10), 0..12)) {
            let mut edges: Vec<(usize, usize)> = (1..n).map(|v| (parents[v - 1] % v, v)).collect();
            edges.extend(extra.into_iter().filter(|(a, b)| a < b && *b < n));
            edges.sort_unstable();
            edges.dedup();
            let g = Graph::from_edges(n, &edges).unwrap();
            let prof = eccentricity_profile(&distance_matrix(&g).unwrap());
            prop_assert!(prof.radius <= prof.diameter && prof.diameter <= 2 * prof.radius);
        }
    }
}
