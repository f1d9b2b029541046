//! Closed-form predictions for the power graph of `𝒢(k, p)`: class sizes and
//! degrees, detour distances, metric dimensions and distance degree
//! sequences. Everything here is a formula in `N = 2^k p`; the computed side
//! lives in the other modules.

use alloc::vec;
use alloc::vec::Vec;

use crate::group::{GroupElement, GroupParams};
use crate::matrices::DistanceMatrix;
use crate::metric::{metric_dimension, ResolvingReport};
use crate::{Graph, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VertexClass {
    /// The identity.
    E,
    /// The central involution `u = r^(N/2)`.
    U,
    /// `⟨r⟩ ∖ {e, u}`.
    H1,
    /// `s r^even`, pendant on `e`.
    H2,
    /// `s r^odd`, in twin pairs.
    H3,
}

impl VertexClass {
    pub const ALL: [VertexClass; 5] = [VertexClass::E, VertexClass::U, VertexClass::H1, VertexClass::H2, VertexClass::H3];

    pub fn name(self) -> &'static str {
        match self {
            VertexClass::E => "e",
            VertexClass::U => "u",
            VertexClass::H1 => "H1",
            VertexClass::H2 => "H2",
            VertexClass::H3 => "H3",
        }
    }
}

pub fn vertex_class(params: &GroupParams, x: GroupElement) -> VertexClass {
    let half = params.cyclic_order() / 2;
    match (x.eps, x.i) {
        (0, 0) => VertexClass::E,
        (0, i) if i == half => VertexClass::U,
        (0, _) => VertexClass::H1,
        (_, i) if i % 2 == 0 => VertexClass::H2,
        _ => VertexClass::H3,
    }
}

/// Classes in the canonical vertex order.
pub fn vertex_classes(params: &GroupParams) -> Vec<VertexClass> {
    params.elements().into_iter().map(|x| vertex_class(params, x)).collect()
}

pub fn class_size(params: &GroupParams, class: VertexClass) -> u64 {
    let n = params.cyclic_order();
    match class {
        VertexClass::E | VertexClass::U => 1,
        VertexClass::H1 => n - 2,
        VertexClass::H2 | VertexClass::H3 => n / 2,
    }
}

pub fn class_degree(params: &GroupParams, class: VertexClass) -> u64 {
    let n = params.cyclic_order();
    match class {
        VertexClass::E => 2 * n - 1,
        VertexClass::U => 3 * n / 2 - 1,
        VertexClass::H1 => n - 1,
        VertexClass::H2 => 1,
        VertexClass::H3 => 3,
    }
}

pub fn edge_count(params: &GroupParams) -> u64 {
    VertexClass::ALL.iter().map(|&c| class_size(params, c) * class_degree(params, c)).sum::<u64>() / 2
}

pub fn eccentricity(class: VertexClass) -> u32 {
    if class == VertexClass::E {
        1
    } else {
        2
    }
}

/// `s r^i` and `s r^(i + N/2)` are the twin pairs of `H3`.
fn h3_twins(params: &GroupParams, a: GroupElement, b: GroupElement) -> bool {
    a.i.abs_diff(b.i) == params.cyclic_order() / 2
}

/// Longest simple path length between two elements.
pub fn detour_distance(params: &GroupParams, a: GroupElement, b: GroupElement) -> u64 {
    use VertexClass::*;
    let n = params.cyclic_order();
    if a == b {
        return 0;
    }
    let (ca, cb) = (vertex_class(params, a), vertex_class(params, b));
    let (lo, hi) = if ca <= cb { (ca, cb) } else { (cb, ca) };
    match (lo, hi) {
        (E, U) => n - 1,
        (E, H2) => 1,
        (E, _) | (U, H1) | (U, H3) | (H1, H1) => n + 1,
        (U, H2) => n,
        (H1, H2) | (H2, H3) => n + 2,
        (H1, H3) => n + 3,
        (H2, H2) => 2,
        (H3, H3) if h3_twins(params, a, b) => n + 1,
        (H3, H3) => n + 3,
        _ => unreachable!("pairs are ordered"),
    }
}

/// Predicted detour matrix in the canonical vertex order.
pub fn detour_matrix(params: &GroupParams) -> DistanceMatrix {
    let elems = params.elements();
    DistanceMatrix::from_fn(elems.len(), |i, j| detour_distance(params, elems[i], elems[j]) as u32)
}

pub fn detour_eccentricity(params: &GroupParams, class: VertexClass) -> u64 {
    let n = params.cyclic_order();
    match class {
        VertexClass::E | VertexClass::U => n + 1,
        VertexClass::H1 | VertexClass::H3 => n + 3,
        VertexClass::H2 => n + 2,
    }
}

pub fn detour_radius(params: &GroupParams) -> u64 {
    params.cyclic_order() + 1
}

pub fn detour_diameter(params: &GroupParams) -> u64 {
    params.cyclic_order() + 3
}

/// `ψ = 7N/4 − 4`.
pub fn metric_dimension_value(params: &GroupParams) -> u64 {
    7 * params.cyclic_order() / 4 - 4
}

/// `⟨r⟩ ∖ {e, u, r^(N-1)}`, every `s r^even` but `s`, and `s r^odd` for odd
/// exponents below `N/2`.
pub fn resolving_witness(params: &GroupParams) -> Vec<GroupElement> {
    let n = params.cyclic_order();
    let half = n / 2;
    let mut out: Vec<GroupElement> = (1..n - 1).filter(|&i| i != half).map(|i| GroupElement::new(0, i)).collect();
    out.extend((2..n).step_by(2).map(|i| GroupElement::new(1, i)));
    out.extend((1..half).step_by(2).map(|i| GroupElement::new(1, i)));
    out
}

/// Metric dimension with the family witness offered as the candidate.
/// `graph` must be in the canonical vertex order.
pub fn certify_metric_dimension(params: &GroupParams, graph: &Graph) -> Result<ResolvingReport> {
    let witness: Vec<usize> =
        resolving_witness(params).into_iter().map(|x| params.index_of(x).expect("witness lies in the group")).collect();
    metric_dimension(graph, Some(&witness))
}

/// `sdim = 2N − 3`.
pub fn strong_metric_dimension_value(params: &GroupParams) -> u64 {
    2 * params.cyclic_order() - 3
}

/// `dds` where a closed form exists: `e`, `u` and `H1`.
pub fn dds(params: &GroupParams, class: VertexClass) -> Option<Vec<usize>> {
    let n = params.cyclic_order() as usize;
    let half = n / 2;
    match class {
        VertexClass::E => Some(vec![1, 2 * n - 1]),
        VertexClass::U => Some(vec![1, 3 * half - 1, half]),
        VertexClass::H1 => Some(vec![1, n - 1, n]),
        VertexClass::H2 | VertexClass::H3 => None,
    }
}

/// The `dds` multiset as a list of `(sequence, count)`: three shapes, the
/// last with count `N − 2`.
pub fn dds_multiset(params: &GroupParams) -> Vec<(Vec<usize>, usize)> {
    let n = params.cyclic_order() as usize;
    [VertexClass::E, VertexClass::U, VertexClass::H1]
        .into_iter()
        .map(|c| (dds(params, c).expect("closed form exists"), if c == VertexClass::H1 { n - 2 } else { 1 }))
        .collect()
}

fn zeros(count: usize) -> core::iter::RepeatN<usize> {
    core::iter::repeat_n(0, count)
}

/// `dds_D`, dense with interior zero runs.
pub fn dds_detour(params: &GroupParams, class: VertexClass) -> Vec<usize> {
    let n = params.cyclic_order() as usize;
    let half = n / 2;
    let mut seq = Vec::with_capacity(n + 4);
    match class {
        VertexClass::E => {
            seq.extend([1, half]);
            seq.extend(zeros(n - 3));
            seq.extend([1, 0, 3 * half - 2]);
        }
        VertexClass::U => {
            seq.push(1);
            seq.extend(zeros(n - 2));
            seq.extend([1, half, 3 * half - 2]);
        }
        VertexClass::H1 => {
            seq.push(1);
            seq.extend(zeros(n));
            seq.extend([n - 1, half, half]);
        }
        VertexClass::H2 => {
            seq.extend([1, 1, half - 1]);
            seq.extend(zeros(n - 3));
            seq.extend([1, 0, 3 * half - 2]);
        }
        VertexClass::H3 => {
            seq.push(1);
            seq.extend(zeros(n));
            seq.extend([3, half, 3 * half - 4]);
        }
    }
    seq
}
