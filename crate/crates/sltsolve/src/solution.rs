use std::collections::BTreeMap;

use gcdiagram::{seed_index_set, Cell, Shape};
use novikov::{fmt_q, parse_q, sign_pow, Q};
use num_traits::{One, Zero};
use serde_json::{json, Map, Value};

use crate::generate::generate;
use crate::inner::symmetric_inner_solution;
use crate::propagate::Mode;
use crate::system::{build_slt, verify_slt, SltReport, SltValues};
use crate::SltError;

/// Values at the seed positions, in the order of the seed index set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Seed {
    pub shape: Shape,
    pub values: BTreeMap<Cell, Q>,
}

impl Seed {
    /// Checks that `values` covers exactly the seed positions, is nonzero, and
    /// is 1 at pinned positions.
    pub fn new(n: usize, m: usize, values: BTreeMap<Cell, Q>) -> Result<Self, SltError> {
        let shape = Shape::new(n, m).map_err(|e| SltError::Range(e.to_string()))?;
        let idx = seed_index_set(n, m).map_err(|e| SltError::Range(e.to_string()))?;
        for c in &idx.seeds {
            match values.get(c) {
                None => return Err(SltError::InvalidSeed(format!("no value at {c}"))),
                Some(v) if v.is_zero() => {
                    return Err(SltError::InvalidSeed(format!("zero value at {c}")))
                }
                Some(v) if idx.pinned.contains(c) && !v.is_one() => {
                    return Err(SltError::InvalidSeed(format!("{c} is pinned to 1")))
                }
                _ => {}
            }
        }
        if let Some(extra) = values.keys().find(|c| !idx.seeds.contains(c)) {
            return Err(SltError::InvalidSeed(format!(
                "{extra} is not a seed position"
            )));
        }
        Ok(Seed { shape, values })
    }

    /// Builds a seed from values listed in seed-index order.
    pub fn from_values(n: usize, m: usize, values: &[Q]) -> Result<Self, SltError> {
        let idx = seed_index_set(n, m).map_err(|e| SltError::Range(e.to_string()))?;
        if values.len() != idx.seeds.len() {
            return Err(SltError::InvalidSeed(format!(
                "expected {} values, got {}",
                idx.seeds.len(),
                values.len()
            )));
        }
        Seed::new(
            n,
            m,
            idx.seeds.into_iter().zip(values.iter().cloned()).collect(),
        )
    }

    pub fn d_mm(&self) -> &Q {
        &self.values[&Cell::new(self.shape.m, self.shape.m)]
    }

    /// Values in seed-index order.
    pub fn ordered(&self) -> Vec<Q> {
        seed_index_set(self.shape.n, self.shape.m)
            .expect("shape already validated")
            .seeds
            .iter()
            .map(|c| self.values[c].clone())
            .collect()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "n": self.shape.n,
            "m": self.shape.m,
            "d": cell_map_json(&self.values),
        })
    }

    pub fn from_json(v: &Value) -> Result<Self, SltError> {
        let n = usize_field(v, "n")?;
        let m = usize_field(v, "m")?;
        Seed::new(n, m, cell_map_from_json(&v["d"])?)
    }
}

/// An exact solution of the SLT system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SltSolution {
    pub seed: Seed,
    /// Rescaled values on `Γ(n) \ B(m) ∪ {(m,m)}`.
    pub z: BTreeMap<Cell, Q>,
    pub p_hor: BTreeMap<usize, Q>,
    pub p_ver: BTreeMap<usize, Q>,
    /// `y` on `Γ(n) \ B(m) ∪ {(m,m)}`.
    pub y: BTreeMap<Cell, Q>,
    /// The symmetric solution on `B(m)` with corner `d_{m,m}`.
    pub inner_y: BTreeMap<Cell, Q>,
    /// Leading bulk values for indices `≥ k`.
    pub c_hor: BTreeMap<usize, Q>,
    pub c_ver: BTreeMap<usize, Q>,
}

impl SltSolution {
    pub fn n(&self) -> usize {
        self.seed.shape.n
    }

    pub fn m(&self) -> usize {
        self.seed.shape.m
    }

    pub fn values(&self) -> SltValues<'_> {
        SltValues {
            inner: &self.inner_y,
            outer: &self.y,
            c_hor: &self.c_hor,
            c_ver: &self.c_ver,
        }
    }

    /// Substitutes into a freshly built system.
    pub fn verify(&self) -> SltReport {
        let system = build_slt(self.n(), self.m()).expect("shape already validated");
        verify_slt(&system, &self.values())
    }

    /// Pairs `(a,b)`, `a < b`, on which `z_{a,b} z_{b,a} = (−1)^{a+b−1} d_{m,m}²`
    /// is checked: both cells outside the box, on a diagonal at most
    /// `min(2m+1, n)`.
    pub fn transpose_pairs(&self) -> Vec<(Cell, bool)> {
        let (n, m) = (self.n(), self.m());
        let d2 = self.seed.d_mm() * self.seed.d_mm();
        let top = (2 * m + 1).min(n);
        let mut out = Vec::new();
        for (&c, v) in &self.z {
            if c.i >= c.j || c.diag() > top {
                continue;
            }
            if let Some(w) = self.z.get(&Cell::new(c.j, c.i)) {
                let expected = sign_pow(c.diag() as i64 - 1) * &d2;
                out.push((c, v * w == expected));
            }
        }
        out
    }

    pub fn to_json(&self) -> Value {
        let idx_map = |m: &BTreeMap<usize, Q>| -> Value {
            Value::Object(
                m.iter()
                    .map(|(i, v)| (i.to_string(), Value::String(fmt_q(v))))
                    .collect(),
            )
        };
        json!({
            "n": self.n(),
            "m": self.m(),
            "seed": self.seed.to_json(),
            "z": cell_map_json(&self.z),
            "y": cell_map_json(&self.y),
            "inner_y": cell_map_json(&self.inner_y),
            "c_hor": idx_map(&self.c_hor),
            "c_ver": idx_map(&self.c_ver),
        })
    }

    /// Reads a solution back; the `z` world and products are recomputed from
    /// `y` and the bulk values.
    pub fn from_json(v: &Value) -> Result<Self, SltError> {
        let seed = Seed::from_json(&v["seed"])?;
        let idx_map = |v: &Value| -> Result<BTreeMap<usize, Q>, SltError> {
            let obj = v
                .as_object()
                .ok_or_else(|| SltError::Json("expected an index map".into()))?;
            obj.iter()
                .map(|(k, v)| {
                    let i = k
                        .parse::<usize>()
                        .map_err(|_| SltError::Json(format!("bad index {k}")))?;
                    Ok((i, q_str(v)?))
                })
                .collect()
        };
        let y = cell_map_from_json(&v["y"])?;
        let inner_y = cell_map_from_json(&v["inner_y"])?;
        let c_hor = idx_map(&v["c_hor"])?;
        let c_ver = idx_map(&v["c_ver"])?;
        let z = crate::zworld::coordinate_change_to_z(&y, &c_hor, &c_ver, &seed.shape)?;
        let k = seed.shape.k();
        let running = |c: &BTreeMap<usize, Q>| {
            let mut acc = Q::one();
            let mut out = BTreeMap::from([(k - 1, Q::one())]);
            for (&i, v) in c.range(k..) {
                acc *= v;
                out.insert(i, acc.clone());
            }
            out
        };
        Ok(SltSolution {
            p_hor: running(&c_hor),
            p_ver: running(&c_ver),
            seed,
            z,
            y,
            inner_y,
            c_hor,
            c_ver,
        })
    }
}

/// Generates the chain from `seed` and assembles the solution.
pub fn solve_slt(seed: &Seed) -> Result<SltSolution, SltError> {
    let state =
        generate(seed.shape, &seed.values, None, Mode::Recurrence).map_err(SltError::NotGeneric)?;
    let inner_y = symmetric_inner_solution(seed.shape.m, seed.d_mm())?;
    let c_hor = state.bulk_hor();
    let c_ver = state.bulk_ver();
    let y = state.to_y()?;
    Ok(SltSolution {
        seed: seed.clone(),
        z: state.z,
        p_hor: state.p_hor,
        p_ver: state.p_ver,
        y,
        inner_y,
        c_hor,
        c_ver,
    })
}

pub fn cell_map_json(map: &BTreeMap<Cell, Q>) -> Value {
    let obj: Map<String, Value> = map
        .iter()
        .map(|(c, v)| (c.key(), Value::String(fmt_q(v))))
        .collect();
    Value::Object(obj)
}

pub fn cell_map_from_json(v: &Value) -> Result<BTreeMap<Cell, Q>, SltError> {
    let obj = v
        .as_object()
        .ok_or_else(|| SltError::Json("expected a cell map".into()))?;
    obj.iter()
        .map(|(k, v)| {
            let c =
                Cell::parse_key(k).ok_or_else(|| SltError::Json(format!("bad cell key {k}")))?;
            Ok((c, q_str(v)?))
        })
        .collect()
}

fn q_str(v: &Value) -> Result<Q, SltError> {
    v.as_str()
        .and_then(parse_q)
        .ok_or_else(|| SltError::Json(format!("bad rational {v}")))
}

fn usize_field(v: &Value, name: &str) -> Result<usize, SltError> {
    v[name]
        .as_u64()
        .map(|x| x as usize)
        .ok_or_else(|| SltError::Json(format!("missing field {name}")))
}
