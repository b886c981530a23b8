//! Combinatorics of the ladder diagram `Γ(n) = {(i,j) : i,j ≥ 1, 2 ≤ i+j ≤ n}`.
//!
//! Cells on the anti-diagonal `i + j = n + 1` are frozen: their polytope
//! coordinate is `λ_i = n − 2i + 1` and the matching torus variable is the
//! constant 1. The box `B(m)` is the `m × m` block in the lower-left corner.

mod cell;
mod facet;
mod point;
pub mod render;
mod seeds;

pub use cell::{gamma, order_hor_less, order_ver_less, Cell, Shape};
pub use facet::{disc_intersection, facets, schubert_cycles, Facet, FacetKind, SchubertCycle};
pub use point::{center_point, segment_point, Affine, GcPoint};
pub use seeds::{seed_index_set, SeedIndexSet};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DiagramError {
    #[error("flag size n = {0} is too small (need n ≥ 3)")]
    SizeTooSmall(usize),
    #[error("box size m = {m} is out of range for n = {n} (need 2 ≤ m ≤ ⌊n/2⌋)")]
    BoxOutOfRange { n: usize, m: usize },
    #[error("segment parameter t = {0} is outside [0, 1]")]
    ParameterOutOfRange(String),
    #[error("cell {0} is not in the ladder diagram")]
    NotInDiagram(Cell),
}
