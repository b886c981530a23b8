//! Generating the whole chain of outside values from a seed.

use std::collections::BTreeMap;

use gcdiagram::{Cell, Shape};
use novikov::Q;
use num_traits::Zero;

use crate::propagate::{diagonal_plan, propagate_diagonal, Mode};
use crate::zworld::{FailureKind, GenFailure, ZState};

/// Runs the diagonals `m+2, …` in order, each from its seed value. With
/// `stop_diag = Some(d)` only diagonals up to `d` are produced and the top
/// equations are skipped; otherwise the bulk products are solved from the
/// equations on `i + j = n`.
pub fn generate(
    shape: Shape,
    seed: &BTreeMap<Cell, Q>,
    stop_diag: Option<usize>,
    mode: Mode,
) -> Result<ZState, GenFailure> {
    let (n, m, k) = (shape.n, shape.m, shape.k());
    let mm = Cell::new(m, m);
    let missing = |c: Cell| GenFailure {
        equation: c,
        component: Some(c),
        kind: FailureKind::Missing,
        top: false,
    };
    let d_mm = seed.get(&mm).cloned().ok_or_else(|| missing(mm))?;
    if d_mm.is_zero() {
        return Err(GenFailure {
            equation: mm,
            component: Some(mm),
            kind: FailureKind::Vanishing,
            top: false,
        });
    }
    let mut state = ZState::new(shape, d_mm);
    let last = stop_diag.map_or(n, |d| d.min(n));
    for d in m + 2..=last {
        let pivot = diagonal_plan(&shape, d).pivot;
        let value = seed.get(&pivot).cloned().ok_or_else(|| missing(pivot))?;
        propagate_diagonal(&mut state, d, value, mode)?;
    }
    if stop_diag.is_some() {
        return Ok(state);
    }
    let top_failure = |eq: Cell, component: Cell| GenFailure {
        equation: eq,
        component: Some(component),
        kind: FailureKind::Vanishing,
        top: true,
    };
    for i in k..n {
        let j = n - i;
        if (i, j) == (m, m) {
            continue;
        }
        let v = state.k_form(i, j)?;
        if v.is_zero() {
            return Err(top_failure(Cell::new(i, j), Cell::new(i + 1, j)));
        }
        state.p_hor.insert(i, v);
    }
    for i in (1..k).rev() {
        let j = n - i;
        let v = state.k_form(i, j)?;
        if v.is_zero() {
            return Err(top_failure(Cell::new(i, j), Cell::new(i, j + 1)));
        }
        state.p_ver.insert(j, v);
    }
    Ok(state)
}

/// Whether fixing the seed at `index` keeps every equation on diagonal
/// `r + s − 1` solvable, given the seed values on earlier diagonals.
pub fn is_pre_generic(shape: Shape, seed: &BTreeMap<Cell, Q>, index: Cell) -> bool {
    generate(shape, seed, Some(index.diag()), Mode::Recurrence).is_ok()
}

/// Whether the whole chain, top equations included, is free of zeros and poles.
pub fn is_generic(shape: Shape, seed: &BTreeMap<Cell, Q>) -> Result<(), GenFailure> {
    generate(shape, seed, None, Mode::Recurrence).map(|_| ())
}
