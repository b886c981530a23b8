//! Lifting the remaining diagonals and the bulk.

use std::collections::BTreeMap;

use gcdiagram::{Cell, FacetKind};
use novikov::{Series, Q};
use potential::{Assignment, BulkParameter};
use sltsolve::{diagonal_plan, SltSolution};

use crate::inner::InnerLift;
use crate::solver::Unknown;
use crate::{LiftError, Stage};

/// Propagates the full gradient equations diagonal by diagonal from the inner
/// lift, holding the seed positions at their rational values, then solves the
/// top diagonal for the bulk products. Results are truncated to `cap`.
pub fn lift_outside(
    slt: &SltSolution,
    inner: InnerLift,
    cap: &Q,
) -> Result<(BulkParameter, Assignment), LiftError> {
    let mut st = inner.state;
    let shape = st.shape;
    if (shape.n, shape.m) != (slt.n(), slt.m()) {
        return Err(LiftError::Range(
            "inner lift and SLT solution disagree on (n, m)".into(),
        ));
    }
    let (n, m, k) = (shape.n, shape.m, shape.k());
    st.stage = Stage::Outside;
    for d in m + 2..=n {
        let plan = diagonal_plan(&shape, d);
        if plan.link.is_none() {
            let v =
                slt.seed.values.get(&plan.pivot).ok_or_else(|| {
                    LiftError::Range(format!("seed has no value at {}", plan.pivot))
                })?;
            let pivot = st.constant(v);
            st.z.insert(plan.pivot, pivot);
        }
        for &(eq, target) in plan.upper.steps.iter().chain(&plan.lower.steps) {
            let v = st.isolate(eq, Unknown::Cell(target))?;
            st.z.insert(target, v);
        }
    }
    st.stage = Stage::Top;
    let even_maximal = n.is_multiple_of(2) && m == k;
    for i in k..n {
        let j = n - i;
        if i < j || (i, j) == (m, m) || (even_maximal && i == k) {
            continue;
        }
        let v = st.isolate(Cell::new(i, j), Unknown::ProductHor(i))?;
        st.p_hor.insert(i, v);
    }
    for j in k..n {
        let i = n - j;
        if i >= j {
            continue;
        }
        let v = st.isolate(Cell::new(i, j), Unknown::ProductVer(j))?;
        st.p_ver.insert(j, v);
    }
    let c_hor = st.bulk_ratios(&st.p_hor)?;
    let c_ver = st.bulk_ratios(&st.p_ver)?;
    let mut point = BTreeMap::new();
    for (&c, z) in &st.z {
        point.insert(c, finish(&st.to_y(c, z)?, cap, &c.to_string())?);
    }
    let bulk = BulkParameter {
        c_hor: finish_map(c_hor, cap, FacetKind::Horizontal)?,
        c_ver: finish_map(c_ver, cap, FacetKind::Vertical)?,
    };
    Ok((bulk, point))
}

fn finish(s: &Series, cap: &Q, what: &str) -> Result<Series, LiftError> {
    if s.cap() < cap {
        return Err(LiftError::Precision {
            what: what.to_string(),
            reached: Box::new(s.cap().clone()),
            needed: Box::new(cap.clone()),
        });
    }
    Ok(s.truncate(cap))
}

fn finish_map(
    map: BTreeMap<usize, Series>,
    cap: &Q,
    kind: FacetKind,
) -> Result<BTreeMap<usize, Series>, LiftError> {
    map.into_iter()
        .map(|(i, s)| Ok((i, finish(&s, cap, &format!("{kind:?} bulk {i}"))?)))
        .collect()
}
