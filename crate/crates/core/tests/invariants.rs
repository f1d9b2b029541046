//! Property tests over the public API: group laws, graph construction,
//! matrices, spectra and distance sequences.

use powergraph_core::cayley::CayleyTable;
use powergraph_core::detour::DetourOptions;
use powergraph_core::distance_seq::{dds, dds_detour, detour_profile};
use powergraph_core::graph::VertexLabel;
use powergraph_core::matrices::{
    a_alpha, adjacency, degree_diag, detour_matrix, distance_matrix, laplacian, rd_alpha, reciprocal_distance,
    reciprocal_transmission, signless_laplacian,
};
use powergraph_core::power_graph::{build_power_graph, power_graph_from_table, twin_class_index, twin_classes};
use powergraph_core::spectra::numeric_spectrum;
use powergraph_core::{AdjacencyRule, Alpha, DenseSymMatrix, Graph, GroupElement, GroupParams};
use proptest::prelude::*;
use proptest::test_runner::RngSeed;

const PRIMES: [u64; 6] = [3, 5, 7, 11, 13, 17];

fn config(seed: u64, cases: u32) -> ProptestConfig {
    ProptestConfig { cases, rng_seed: RngSeed::Fixed(seed), ..ProptestConfig::default() }
}

fn arb_params() -> impl Strategy<Value = GroupParams> {
    (2u32..=5, 0usize..PRIMES.len()).prop_map(|(k, i)| GroupParams::new(k, PRIMES[i]).unwrap())
}

fn arb_element(params: GroupParams) -> impl Strategy<Value = GroupElement> {
    (0u8..=1, 0..params.cyclic_order()).prop_map(|(eps, i)| GroupElement::new(eps, i))
}

fn arb_connected() -> impl Strategy<Value = Graph> {
    (2usize..=9)
        .prop_flat_map(|n| {
            (
                Just(n),
                proptest::collection::vec(0usize..1000, n - 1),
                proptest::collection::vec(any::<bool>(), n * (n - 1) / 2),
            )
        })
        .prop_map(|(n, parents, extra)| {
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

fn assert_symmetric(m: &DenseSymMatrix) {
    for i in 0..m.dim() {
        for j in 0..m.dim() {
            assert_eq!(m[(i, j)].to_bits(), m[(j, i)].to_bits());
        }
    }
}

fn twins(g: &Graph, u: usize, v: usize) -> bool {
    let strip = |a: usize, b: usize| g.neighbors(a).iter().filter(|&x| x != b).collect::<Vec<_>>();
    strip(u, v) == strip(v, u)
}

proptest! {
    #![proptest_config(config(101, 128))]

    #[test]
    fn group_laws(params in arb_params(), seed in any::<u64>()) {
        let n = params.cyclic_order();
        prop_assert_eq!(params.m() * params.m() % n, 1);
        let r = params.r();
        let conj = params.multiply(params.multiply(params.s(), r).unwrap(), params.inverse(params.s()).unwrap()).unwrap();
        prop_assert_eq!(conj, params.power(r, params.m()).unwrap());
        let pick = |t: u64| GroupElement::new((t >> 63) as u8, t % n);
        let (a, b, c) = (pick(seed), pick(seed.rotate_left(21) ^ 0x9e37), pick(seed.rotate_left(42) ^ 0x7f4a));
        let left = params.multiply(params.multiply(a, b).unwrap(), c).unwrap();
        let right = params.multiply(a, params.multiply(b, c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
        prop_assert_eq!(params.order() % params.order_of(a).unwrap(), 0);
    }

    #[test]
    fn inverses(x in arb_params().prop_flat_map(|p| (Just(p), arb_element(p)))) {
        let (params, a) = x;
        let inv = params.inverse(a).unwrap();
        prop_assert_eq!(params.multiply(a, inv).unwrap(), params.identity());
        prop_assert_eq!(params.multiply(inv, a).unwrap(), params.identity());
    }
}

proptest! {
    #![proptest_config(config(102, 24))]

    #[test]
    fn family_power_graphs(params in arb_params().prop_filter("order", |p| p.order() <= 160)) {
        let n = params.order() as usize;
        let half = params.cyclic_order() as usize / 2;
        for rule in [AdjacencyRule::Cyclic, AdjacencyRule::Power] {
            let g = build_power_graph(&params, rule);
            for a in 0..n {
                for b in 0..n {
                    prop_assert_eq!(g.has_edge(a, b), g.has_edge(b, a));
                }
            }
            prop_assert_eq!(g.degree(0), n - 1);
        }
        let g = build_power_graph(&params, AdjacencyRule::Cyclic);
        let mut degrees = g.degrees();
        degrees.sort_unstable();
        let mut want = vec![1; half];
        want.extend(vec![3; half]);
        want.extend(vec![2 * half - 1; 2 * half - 2]);
        want.push(3 * half - 1);
        want.push(n - 1);
        want.sort_unstable();
        prop_assert_eq!(degrees, want);
    }
}

#[test]
fn identity_is_universal_in_table_power_graphs() {
    for n in 1..=16 {
        for table in [CayleyTable::cyclic(n), CayleyTable::dihedral(n)] {
            let labels: Vec<VertexLabel> = (0..table.order()).map(|i| VertexLabel::Opaque(i.to_string())).collect();
            for rule in [AdjacencyRule::Cyclic, AdjacencyRule::Power] {
                let g = power_graph_from_table(&table, labels.clone(), rule).unwrap();
                let e = table.identity().unwrap();
                assert_eq!(g.degree(e), g.order() - 1, "order {} rule {rule:?}", table.order());
            }
        }
    }
}


proptest! {
    #![proptest_config(config(103, 128))]

    #[test]
    fn twin_classes_are_exactly_the_twin_relation(g in arb_connected()) {
        let classes = twin_classes(&g);
        let idx = twin_class_index(&classes, g.order());
        for u in 0..g.order() {
            for v in 0..g.order() {
                if u != v {
                    prop_assert_eq!(idx[u] == idx[v], twins(&g, u, v), "u={} v={}", u, v);
                }
            }
        }
    }

    #[test]
    fn matrix_identities(g in arb_connected(), a in 0.0f64..=1.0) {
        let alpha = Alpha::new(a).unwrap();
        let (adj, deg) = (adjacency(&g), degree_diag(&g));
        let m = a_alpha(&g, alpha);
        for i in 0..g.order() {
            for j in 0..g.order() {
                prop_assert_eq!(m[(i, j)], a * deg[(i, j)] + (1.0 - a) * adj[(i, j)]);
            }
        }
        let dist = distance_matrix(&g).unwrap();
        let rd = reciprocal_distance(&dist);
        let rt = reciprocal_transmission(&dist);
        for mat in [&adj, &deg, &laplacian(&g), &signless_laplacian(&g), &m, &rd, &rt, &rd_alpha(&dist, alpha)] {
            assert_symmetric(mat);
        }
        let n = g.order();
        for i in 0..n {
            let mut row = 0.0;
            for j in 0..n {
                let d = dist.get(i, j);
                prop_assert_eq!(rd[(i, j)], if i == j { 0.0 } else { 1.0 / d as f64 });
                row += rd[(i, j)];
                for k in 0..n {
                    prop_assert!(dist.get(i, k) <= d + dist.get(j, k));
                }
            }
            prop_assert!((rt[(i, i)] - row).abs() <= 1e-12 * row.max(1.0));
        }
    }

    #[test]
    fn spectral_identities(g in arb_connected(), a in 0.0f64..=1.0) {
        let alpha = Alpha::new(a).unwrap();
        let n = g.order();
        let deg_sum: usize = g.degrees().iter().sum();
        let spec = numeric_spectrum(&a_alpha(&g, alpha)).unwrap();
        prop_assert_eq!(spec.total(), n);
        let trace: f64 = spec.expanded().iter().sum();
        let want = a * deg_sum as f64;
        prop_assert!((trace - want).abs() <= 1e-9 * want.abs().max(1.0));

        let dist = distance_matrix(&g).unwrap();
        let rd_spec = numeric_spectrum(&rd_alpha(&dist, alpha)).unwrap();
        prop_assert_eq!(rd_spec.total(), n);
        let rt_sum: f64 = reciprocal_transmission(&dist).diag().iter().sum();
        let rd_trace: f64 = rd_spec.expanded().iter().sum();
        prop_assert!((rd_trace - a * rt_sum).abs() <= 1e-9 * (a * rt_sum).abs().max(1.0));

        let radius = numeric_spectrum(&adjacency(&g)).unwrap().expanded()[0];
        let avg = deg_sum as f64 / n as f64;
        let max = *g.degrees().iter().max().unwrap() as f64;
        prop_assert!(radius >= avg - 1e-9 && radius <= max + 1e-9);
    }

    #[test]
    fn sequence_tables(g in arb_connected()) {
        let n = g.order();
        let dist = distance_matrix(&g).unwrap();
        let detour = detour_matrix(&g, &mut DetourOptions::default()).unwrap();
        let (t, td) = (dds(&dist), dds_detour(&detour));
        let prof = detour_profile(&detour);
        let idx = twin_class_index(&twin_classes(&g), n);
        for v in 0..n {
            prop_assert_eq!(t.row(v).iter().sum::<usize>(), n);
            prop_assert_eq!(td.row(v).iter().sum::<usize>(), n);
            prop_assert_eq!(t.row(v)[0], 1);
            prop_assert_eq!(td.row(v)[0], 1);
            prop_assert_eq!(t.row(v)[1], g.degree(v));
            let last = td.row(v).iter().rposition(|&c| c > 0).unwrap();
            prop_assert_eq!(last as u32, prof.eccentricity[v]);
            for w in 0..n {
                prop_assert!(detour.get(v, w) >= dist.get(v, w));
                prop_assert!((detour.get(v, w) as usize) < n);
                if idx[v] == idx[w] {
                    prop_assert_eq!(t.row(v), t.row(w));
                    prop_assert_eq!(td.row(v), td.row(w));
                }
            }
        }
    }
}
