//! The potential function `W` of a Gelfand–Cetlin fiber, its bulk deformations
//! and logarithmic gradients, kept symbolic term by term.
//!
//! Each term is attached to the facet that generates it:
//! the vertical facet at `(i,j)` gives `y_{i,j+1}/y_{i,j} · T^{u_{i,j+1}−u_{i,j}}`
//! and the horizontal one gives `y_{i,j}/y_{i+1,j} · T^{u_{i,j}−u_{i+1,j}}`.
//! Anti-diagonal variables are the constant 1.

mod bulk;
mod eval;
mod expr;
mod render;

pub use bulk::BulkParameter;
pub use eval::{evaluate, normalized_gradient, Assignment, NormalizedGradient, Substitution};
pub use expr::{apply_bulk, build_potential, log_gradient, Monomial, PotentialExpr, Term};
pub use render::{render_numeric, render_symbolic, to_json};

use gcdiagram::Cell;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PotentialError {
    #[error("bulk entry {0} is not a unit")]
    NonUnitBulk(String),
    #[error("cell {0} is not in the ladder diagram")]
    NotInDiagram(Cell),
    #[error("no value assigned to y{0}")]
    Missing(Cell),
    #[error("y{0} is inverted but is not a unit")]
    NotUnit(Cell),
}
