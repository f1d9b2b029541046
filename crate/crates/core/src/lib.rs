//! Core algorithms for the power graph of the metacyclic group
//! `⟨s, r : r^(2^k p) = s² = e, s r s⁻¹ = r^(2^(k-1) p - 1)⟩`.
//!
//! Everything here is pure computation over `alloc` collections: group
//! arithmetic in normal form, graph construction and classification, the
//! matrix family (`A`, `D`, `L`, `Q`, `A_α`, distance, Harary, `RD_α`, detour),
//! a Jacobi eigensolver, closed-form spectrum predictors, metric and strong
//! metric dimension, and distance degree sequences. IO and reporting live in
//! the `powergraph` crate.
#![cfg_attr(not(test), no_std)]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod bits;
pub mod cayley;
pub mod detour;
pub mod distance_seq;
pub mod eigen;
mod error;
pub mod family;
pub mod graph;
pub mod group;
pub mod matrices;
pub mod matrix;
pub mod metric;
pub mod power_graph;
pub mod spectra;
pub mod vertex_cover;

pub use error::{Error, Result};
pub use graph::{Graph, VertexLabel};
pub use group::{GroupElement, GroupParams};
pub use matrix::{Alpha, DenseSymMatrix};
pub use power_graph::{AdjacencyRule, PartitionClasses, TwinClass, TwinKind};
pub use spectra::{Spectrum, SpectrumEntry, SpectrumSource};

/// Version of this library, embedded in reports.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
