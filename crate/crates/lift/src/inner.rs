//! Lifting the box `B(m)` together with the column `m+1` and the row `m+1`.

use std::collections::BTreeMap;

use gcdiagram::{Cell, Shape};
use novikov::{Series, Q};
use num_traits::Zero;
use sltsolve::symmetric_inner_solution;

use crate::solver::{LiftState, Unknown};
use crate::{LiftError, Stage};

/// Boundary data of the inner lift: `d_{m,m}` and the column `d_{i,m+1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryData {
    pub d_mm: Q,
    /// `d_{i,m+1}` for `1 ≤ i ≤ m`; entries on the anti-diagonal are ignored.
    pub column: BTreeMap<usize, Q>,
}

#[derive(Clone, Debug)]
pub struct InnerLift {
    /// Working state after the inner stage, in rescaled coordinates.
    pub state: LiftState,
    /// `a_j` for `2 ≤ j < m`: the unit solving
    /// `−y_{j,m+1} + a_j (y_{j−1,m} + y_{j,m+1} T^{(m−j+1)t}) = 0`.
    pub multipliers: BTreeMap<usize, Series>,
}

impl InnerLift {
    /// Lifted values on `B(m)` and on the cells `(l,m+1)`, `(m+1,l)` off the
    /// anti-diagonal, in the original coordinates.
    pub fn y(&self) -> Result<BTreeMap<Cell, Series>, LiftError> {
        let m = self.state.shape.m;
        self.state
            .z
            .iter()
            .filter(|(c, _)| c.i <= m + 1 && c.j <= m + 1)
            .map(|(&c, z)| Ok((c, self.state.to_y(c, z)?)))
            .collect()
    }
}

/// Step 1 fixes the triangle `i + j ≤ m + 1` to the symmetric solution; then
/// each equation of `B(m)` on the diagonals `m+1, …, 2m` is solved for
/// `y_{i+1,j}`. The row-`m` equations produce the cells `(m+1, j)`, and for
/// `n = 2m` the corner equation fixes the vertical product `P_ver(m)` instead.
pub fn lift_inside(
    n: usize,
    m: usize,
    t: &Q,
    cap: &Q,
    data: &BoundaryData,
) -> Result<InnerLift, LiftError> {
    let shape = Shape::new(n, m).map_err(|e| LiftError::Range(e.to_string()))?;
    check_t(t)?;
    if data.d_mm.is_zero() || data.column.values().any(Zero::is_zero) {
        return Err(LiftError::Range("boundary data must be nonzero".into()));
    }
    // corrections of relative order up to m·t are divided out on row m
    let work = cap + t * Q::from_integer((m as i64).into()) + Q::from_integer(1.into());
    let mut st = LiftState::new(shape, t, work)?;
    st.stage = Stage::Inside;
    let inner =
        symmetric_inner_solution(m, &data.d_mm).map_err(|e| LiftError::Range(e.to_string()))?;
    for (&c, v) in &inner {
        if c.diag() <= m + 1 {
            st.z.insert(c, st.constant(v));
        }
    }
    for s in 1..=m {
        let c = Cell::new(s, m + 1);
        if c.diag() <= n {
            let d = data
                .column
                .get(&s)
                .ok_or_else(|| LiftError::Range(format!("missing boundary value at {c}")))?;
            st.z.insert(c, st.constant(d));
        }
    }
    let k = shape.k();
    for s in m + 1..=2 * m {
        for i in s - m..=m {
            let j = s - i;
            let target = Cell::new(i + 1, j);
            if target.diag() == n + 1 {
                let v = st.isolate(Cell::new(i, j), Unknown::ProductVer(k))?;
                st.p_ver.insert(k, v);
            } else {
                let v = st.isolate(Cell::new(i, j), Unknown::Cell(target))?;
                st.z.insert(target, v);
            }
        }
    }
    let mut multipliers = BTreeMap::new();
    for j in 2..m {
        let kappa = t * Q::from_integer(((m - j + 1) as i64).into());
        let col = &st.z[&Cell::new(j, m + 1)];
        let den = &st.z[&Cell::new(j - 1, m)] + &col.shift(&kappa);
        if let Ok(inv) = den.invert_unit() {
            multipliers.insert(j, col * &inv);
        }
    }
    Ok(InnerLift {
        state: st,
        multipliers,
    })
}

pub(crate) fn check_t(t: &Q) -> Result<(), LiftError> {
    if t <= &Q::zero() || t >= &Q::from_integer(1.into()) {
        return Err(LiftError::Range(format!(
            "t = {} must lie strictly between 0 and 1",
            novikov::fmt_q(t)
        )));
    }
    Ok(())
}
