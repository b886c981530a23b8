//! The three-row flag manifold, where the bulk can be written down by hand.

use std::collections::BTreeMap;

use gcdiagram::{Cell, FacetKind, Shape};
use novikov::{q, qf, Series, Q};
use potential::BulkParameter;

use crate::certificate::{verify_certificate, Certificate, LeadingValues};
use crate::inner::check_t;
use crate::solver::{LiftState, Unknown};
use crate::{LiftError, Stage};

/// Takes `c^ver_{2,1} = 1 + T^{2t}`, `y_{1,2} = y_{2,1} = 1` and
/// `y_{1,1} = −√(1 + T^{2t})`, then solves the `(1,2)` and `(2,1)` equations
/// for `c^ver_{3,2}` and `c^hor_{2,3}`.
pub fn certify_fl3(t: &Q, cap: &Q) -> Result<Certificate, LiftError> {
    check_t(t)?;
    let work = cap + q(2);
    // the segment of Fl(3) is labelled by m = 2 although no box fits
    let shape = Shape { n: 3, m: 2 };
    let point = gcdiagram::segment_point(3, 2, t).map_err(|e| LiftError::Range(e.to_string()))?;
    let mut st = LiftState::at_point(shape, point, work.clone());
    st.stage = Stage::Fl3;
    st.p_hor = BTreeMap::from([
        (1, Series::one(work.clone())),
        (2, Series::one(work.clone())),
    ]);
    st.p_ver = st.p_hor.clone();
    let deformation = Series::from_terms([(q(0), q(1)), (t * q(2), q(1))], work.clone());
    let y11 = deformation
        .sqrt_unit(-1)
        .map_err(|e| LiftError::Range(e.to_string()))?;
    st.bulk
        .insert((FacetKind::Vertical, 1), deformation.clone());
    st.z.insert(Cell::new(1, 1), y11);
    st.z.insert(Cell::new(1, 2), Series::one(work.clone()));
    st.z.insert(Cell::new(2, 1), Series::one(work.clone()));
    let c_ver2 = st.isolate(Cell::new(1, 2), Unknown::Bulk(FacetKind::Vertical, 2))?;
    st.bulk.insert((FacetKind::Vertical, 2), c_ver2.clone());
    let c_hor2 = st.isolate(Cell::new(2, 1), Unknown::Bulk(FacetKind::Horizontal, 2))?;

    let point = st.z.iter().map(|(&c, s)| (c, s.truncate(cap))).collect();
    let bulk = BulkParameter {
        c_hor: BTreeMap::from([(2, c_hor2.truncate(cap))]),
        c_ver: BTreeMap::from([(1, deformation.truncate(cap)), (2, c_ver2.truncate(cap))]),
    };
    let leading = LeadingValues {
        y: BTreeMap::from([
            (Cell::new(1, 1), q(-1)),
            (Cell::new(1, 2), q(1)),
            (Cell::new(2, 1), q(1)),
        ]),
        c_hor: BTreeMap::from([(2, qf(1, 2))]),
        c_ver: BTreeMap::from([(1, q(1)), (2, qf(-1, 2))]),
    };
    let mut cert = Certificate::new(3, 2, t.clone(), cap.clone(), bulk, point, leading, None);
    cert.report = verify_certificate(&cert);
    Ok(cert)
}
