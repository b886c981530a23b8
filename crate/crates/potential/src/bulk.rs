use std::collections::BTreeMap;

use gcdiagram::{Facet, FacetKind};
use novikov::Series;
use num_traits::{One, Zero};
use serde_json::{json, Map, Value};

use crate::PotentialError;

/// Unit coefficients `c^hor_{i,i+1}` (keyed by `i`) and `c^ver_{j+1,j}` (keyed by `j`).
/// Missing entries are 1.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BulkParameter {
    pub c_hor: BTreeMap<usize, Series>,
    pub c_ver: BTreeMap<usize, Series>,
}

impl BulkParameter {
    pub fn ones() -> Self {
        Self::default()
    }

    pub fn get(&self, kind: FacetKind, index: usize) -> Option<&Series> {
        match kind {
            FacetKind::Horizontal => self.c_hor.get(&index),
            FacetKind::Vertical => self.c_ver.get(&index),
        }
    }

    /// The coefficient multiplying the term of `facet`, or `None` when it is 1.
    pub fn for_facet(&self, facet: Facet) -> Option<&Series> {
        self.get(facet.kind, facet.cycle_index())
            .filter(|s| !is_exact_one(s))
    }

    pub fn validate(&self) -> Result<(), PotentialError> {
        for (name, map) in [("hor", &self.c_hor), ("ver", &self.c_ver)] {
            for (idx, s) in map {
                if !s.is_unit() {
                    return Err(PotentialError::NonUnitBulk(format!(
                        "c_{name}[{idx}] = {s}"
                    )));
                }
            }
        }
        Ok(())
    }

    /// `{"c_hor": {"i": series}, "c_ver": {"j": series}}`.
    pub fn to_json(&self) -> Value {
        let side = |m: &BTreeMap<usize, Series>| {
            Value::Object(
                m.iter()
                    .map(|(k, v)| (k.to_string(), v.to_json()))
                    .collect::<Map<_, _>>(),
            )
        };
        json!({"c_hor": side(&self.c_hor), "c_ver": side(&self.c_ver)})
    }

    pub fn from_json(v: &Value) -> Option<Self> {
        let side = |key: &str| -> Option<BTreeMap<usize, Series>> {
            match v.get(key) {
                None => Some(BTreeMap::new()),
                Some(Value::Object(m)) => m
                    .iter()
                    .map(|(k, s)| Some((k.parse().ok()?, Series::from_json(s)?)))
                    .collect(),
                Some(_) => None,
            }
        };
        Some(BulkParameter {
            c_hor: side("c_hor")?,
            c_ver: side("c_ver")?,
        })
    }
}

fn is_exact_one(s: &Series) -> bool {
    s.terms().len() == 1 && s.coeff(&Zero::zero()).is_one()
}
