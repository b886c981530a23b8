//! JSON form: `{"terms": [[exp_num, exp_den, coeff_num, coeff_den], ...], "cap": [num, den]}`.
//!
//! Integers that fit in an `i64` are written as JSON numbers, larger ones as
//! decimal strings; both are accepted on input, so round trips are exact.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::Value;

use crate::rational::Q;
use crate::series::Series;

pub fn int_to_json(x: &BigInt) -> Value {
    match x.to_i64() {
        Some(v) => Value::from(v),
        None => Value::String(x.to_string()),
    }
}

pub fn int_from_json(v: &Value) -> Option<BigInt> {
    match v {
        Value::Number(n) => n.as_i64().map(BigInt::from),
        Value::String(s) => s.parse().ok(),
        _ => None,
    }
}

/// `[num, den]` pair.
pub fn q_to_json(x: &Q) -> Value {
    Value::Array(vec![int_to_json(x.numer()), int_to_json(x.denom())])
}

pub fn q_from_json(v: &Value) -> Option<Q> {
    let arr = v.as_array()?;
    if arr.len() != 2 {
        return None;
    }
    let n = int_from_json(&arr[0])?;
    let d = int_from_json(&arr[1])?;
    if d.is_zero() {
        return None;
    }
    Some(Q::new(n, d))
}

impl Series {
    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .terms()
            .iter()
            .map(|(e, c)| {
                Value::Array(vec![
                    int_to_json(e.numer()),
                    int_to_json(e.denom()),
                    int_to_json(c.numer()),
                    int_to_json(c.denom()),
                ])
            })
            .collect();
        serde_json::json!({ "terms": terms, "cap": q_to_json(self.cap()) })
    }

    pub fn from_json(v: &Value) -> Option<Series> {
        let cap = q_from_json(v.get("cap")?)?;
        let mut terms = Vec::new();
        for t in v.get("terms")?.as_array()? {
            let t = t.as_array()?;
            if t.len() != 4 {
                return None;
            }
            let ints: Option<Vec<BigInt>> = t.iter().map(int_from_json).collect();
            let ints = ints?;
            if ints[1].is_zero() || ints[3].is_zero() || ints[2].is_zero() {
                return None;
            }
            let e = Q::new(ints[0].clone(), ints[1].clone());
            let c = Q::new(ints[2].clone(), ints[3].clone());
            if e >= cap {
                return None;
            }
            terms.push((e, c));
        }
        let n = terms.len();
        let s = Series::from_terms(terms, cap);
        (s.terms().len() == n).then_some(s)
    }
}

impl Serialize for Series {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.to_json().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Series {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let v = Value::deserialize(deserializer)?;
        Series::from_json(&v).ok_or_else(|| D::Error::custom("malformed series"))
    }
}
