//! Solving one diagonal from its pivot, either equation by equation or through
//! the fractional-linear recurrence.

use gcdiagram::{Cell, Shape};
use novikov::{sign_pow, Q};
use num_traits::{One, Zero};

use crate::zworld::{FailureKind, GenFailure, ZState};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Mode {
    /// `X(i) = (A(i)X(0) + B(i)) / (A(i−1)X(0) + B(i−1))`.
    #[default]
    Recurrence,
    /// Repeated substitution into the k-form.
    Direct,
}

/// One of the two chains of a diagonal walking away from its pivot.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arc {
    /// The cell whose value is `X(0)` (or its reciprocal on the lower arc).
    pub start: Cell,
    /// `true` for the arc towards row 1, where `X(i) = z`; `false` for the arc
    /// towards column 1, where `X(i) = 1/z`.
    pub upper: bool,
    /// Equation solved at step `i`, and the cell it produces, for `i = 1, 2, …`.
    pub steps: Vec<(Cell, Cell)>,
}

/// Layout of diagonal `d`: the pivot, the link cell fixed alongside it (for
/// diagonals touching the box), and the two arcs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagonalPlan {
    pub pivot: Cell,
    pub link: Option<Cell>,
    pub upper: Arc,
    pub lower: Arc,
}

pub fn diagonal_plan(shape: &Shape, d: usize) -> DiagonalPlan {
    let m = shape.m;
    let (pivot, link) = if d <= 2 * m + 1 {
        let l = d - m - 1;
        (Cell::new(l, m + 1), Some(Cell::new(m + 1, l)))
    } else {
        let r = d / 2;
        (Cell::new(r, d - r), None)
    };
    let upper_steps = (1..pivot.i)
        .map(|i| {
            let eq = Cell::new(pivot.i - i, pivot.j + i - 1);
            (eq, ZState::successor(eq.i, eq.j))
        })
        .collect();
    let start = link.unwrap_or(pivot);
    let lower_steps = (1..start.j)
        .map(|i| {
            let eq = Cell::new(start.i + i - 1, start.j - i);
            (eq, ZState::successor(eq.i, eq.j))
        })
        .collect();
    DiagonalPlan {
        pivot,
        link,
        upper: Arc {
            start: pivot,
            upper: true,
            steps: upper_steps,
        },
        lower: Arc {
            start,
            upper: false,
            steps: lower_steps,
        },
    }
}

/// `[i]` and `[i,i−1]` for every step of `arc`, read off the previous diagonal.
pub fn brackets(state: &ZState, arc: &Arc) -> Result<Vec<(Q, Q)>, GenFailure> {
    let mut out = Vec::with_capacity(arc.steps.len());
    for &(eq, _) in &arc.steps {
        let (a, b) = (eq.i, eq.j);
        let zab = state
            .neighbor(eq, a, b)?
            .expect("arc equations sit outside the box");
        let sq = &zab * &zab;
        let up = state.neighbor(eq, a - 1, b)?.unwrap_or_else(Q::zero);
        let left = match state.neighbor(eq, a, b - 1)? {
            None => Q::zero(),
            Some(v) if v.is_zero() => return Err(pole(eq)),
            Some(v) => v.recip(),
        };
        if arc.upper {
            out.push((&sq * left - up, sq));
        } else {
            out.push((up / &sq - left, sq.recip()));
        }
    }
    Ok(out)
}

fn pole(eq: Cell) -> GenFailure {
    GenFailure {
        equation: eq,
        component: None,
        kind: FailureKind::Pole,
        top: false,
    }
}

/// `(A(i), B(i))` for `i = −1, 0, 1, …, len`.
pub fn fractional_linear(brackets: &[(Q, Q)]) -> Vec<(Q, Q)> {
    let mut ab = vec![(Q::zero(), Q::one()), (Q::one(), Q::zero())];
    for (single, pair) in brackets {
        let len = ab.len();
        let (a1, b1) = &ab[len - 1];
        let (a2, b2) = &ab[len - 2];
        let next = (single * a1 + pair * a2, single * b1 + pair * b2);
        ab.push(next);
    }
    ab
}

fn run_recurrence(state: &mut ZState, arc: &Arc) -> Result<(), GenFailure> {
    let start = state.z[&arc.start].clone();
    let x0 = if arc.upper { start } else { start.recip() };
    let ab = fractional_linear(&brackets(state, arc)?);
    for (idx, &(eq, target)) in arc.steps.iter().enumerate() {
        let (a, b) = &ab[idx + 2];
        let (pa, pb) = &ab[idx + 1];
        let den = pa * &x0 + pb;
        if den.is_zero() {
            return Err(pole(eq));
        }
        let x = (a * &x0 + b) / den;
        if x.is_zero() {
            return Err(GenFailure {
                equation: eq,
                component: Some(target),
                kind: FailureKind::Vanishing,
                top: false,
            });
        }
        let z = if arc.upper { x } else { x.recip() };
        state.z.insert(target, z);
    }
    Ok(())
}

/// Fixes the pivot of diagonal `d` to `pivot_value` and solves the rest of
/// the diagonal from the diagonals below it.
pub fn propagate_diagonal(
    state: &mut ZState,
    d: usize,
    pivot_value: Q,
    mode: Mode,
) -> Result<(), GenFailure> {
    let plan = diagonal_plan(&state.shape, d);
    if pivot_value.is_zero() {
        return Err(GenFailure {
            equation: plan.pivot,
            component: Some(plan.pivot),
            kind: FailureKind::Vanishing,
            top: false,
        });
    }
    if let Some(link) = plan.link {
        // ℓ^m_{(l)} = 0 fixes z_{m+1,l} = (−1)^{m−l} z_{m,m}² / z_{l,m+1}
        let m = state.shape.m;
        let dmm = &state.z[&Cell::new(m, m)];
        let v = sign_pow(m as i64 - link.j as i64) * dmm * dmm / &pivot_value;
        state.z.insert(link, v);
    }
    state.z.insert(plan.pivot, pivot_value);
    for arc in [&plan.upper, &plan.lower] {
        match mode {
            Mode::Direct => {
                for &(eq, _) in &arc.steps {
                    state.isolate(eq.i, eq.j)?;
                }
            }
            Mode::Recurrence => run_recurrence(state, arc)?,
        }
    }
    Ok(())
}
