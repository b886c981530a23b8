//! The split leading term system of a Gelfand–Cetlin diagram cut along a box
//! `B(m)`, its closed-form inside solutions and an exact solver for the rest.

mod generate;
mod inner;
mod propagate;
mod search;
mod solution;
mod system;
mod zworld;

pub use generate::{generate, is_generic, is_pre_generic};
pub use inner::{symmetric_inner_base, symmetric_inner_solution, ztilde};
pub use propagate::{
    brackets, diagonal_plan, fractional_linear, propagate_diagonal, Arc, DiagonalPlan, Mode,
};
pub use search::{
    candidates, find_generic_seed, find_generic_seed_with_budget, SearchOutcome, DEFAULT_BUDGET,
};
pub use solution::{cell_map_from_json, cell_map_json, solve_slt, Seed, SltSolution};
pub use system::{
    build_slt, verify_slt, EquationLabel, SltEquation, SltReport, SltSystem, SltTerm, SltValues,
};
pub use zworld::{coordinate_change_to_y, coordinate_change_to_z, FailureKind, GenFailure, ZState};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SltError {
    #[error("out of range: {0}")]
    Range(String),
    #[error("the scale of the inner solution must be nonzero")]
    ZeroScale,
    #[error("bulk value at index {0} is zero")]
    ZeroBulk(usize),
    #[error("invalid seed: {0}")]
    InvalidSeed(String),
    #[error("seed not generic: {0}")]
    NotGeneric(GenFailure),
    #[error("search budget of {budget} nodes exhausted for n = {n}, m = {m}{}", last(.last_failure))]
    BudgetExhausted {
        n: usize,
        m: usize,
        budget: usize,
        last_failure: Option<GenFailure>,
    },
    #[error("no generic seed among the candidates for n = {n}, m = {m} ({nodes} nodes){}", last(.last_failure))]
    SearchExhausted {
        n: usize,
        m: usize,
        nodes: usize,
        last_failure: Option<GenFailure>,
    },
    #[error("malformed JSON: {0}")]
    Json(String),
}

fn last(f: &Option<GenFailure>) -> String {
    f.as_ref()
        .map(|f| format!("; last failure: {f}"))
        .unwrap_or_default()
}
