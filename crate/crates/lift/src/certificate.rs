use std::collections::BTreeMap;
use std::fmt;

use gcdiagram::{gamma, segment_point, Cell, FacetKind};
use novikov::{fmt_q, fmt_q_short, parse_q, Series, Q};
use potential::{apply_bulk, build_potential, normalized_gradient, Assignment, BulkParameter};
use serde_json::{json, Map, Value};
use sltsolve::{find_generic_seed, solve_slt, SltSolution};

use crate::inner::{check_t, lift_inside, BoundaryData};
use crate::outer::lift_outside;
use crate::LiftError;

pub const FORMAT_VERSION: &str = concat!("gcflag-certificate/", env!("CARGO_PKG_VERSION"));

/// Expected constant terms of the point and of the bulk.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LeadingValues {
    pub y: BTreeMap<Cell, Q>,
    pub c_hor: BTreeMap<usize, Q>,
    pub c_ver: BTreeMap<usize, Q>,
}

impl LeadingValues {
    pub fn from_slt(slt: &SltSolution) -> Self {
        let mut y = slt.inner_y.clone();
        y.extend(slt.y.iter().map(|(c, v)| (*c, v.clone())));
        LeadingValues {
            y,
            c_hor: slt.c_hor.clone(),
            c_ver: slt.c_ver.clone(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum CheckKind {
    /// Valuation exactly 0.
    Unit,
    /// Normalized gradient vanishes to the checked order.
    Gradient,
    /// Constant term matches the exact split solution.
    Leading,
}

impl CheckKind {
    fn name(self) -> &'static str {
        match self {
            CheckKind::Unit => "unit",
            CheckKind::Gradient => "gradient",
            CheckKind::Leading => "leading",
        }
    }

    fn parse(s: &str) -> Option<Self> {
        match s {
            "unit" => Some(CheckKind::Unit),
            "gradient" => Some(CheckKind::Gradient),
            "leading" => Some(CheckKind::Leading),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckEntry {
    pub kind: CheckKind,
    /// `"y i,j"`, `"c_hor i"`, `"c_ver j"` or a gradient index `"i,j"`.
    pub subject: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CheckReport {
    pub entries: Vec<CheckEntry>,
}

impl CheckReport {
    pub fn all_pass(&self) -> bool {
        !self.entries.is_empty() && self.entries.iter().all(|e| e.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckEntry> {
        self.entries.iter().filter(|e| !e.pass)
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.entries
                .iter()
                .map(|e| {
                    json!({
                        "check": e.kind.name(),
                        "subject": e.subject,
                        "pass": e.pass,
                        "detail": e.detail,
                    })
                })
                .collect(),
        )
    }

    pub fn from_json(v: &Value) -> Result<Self, LiftError> {
        let arr = v
            .as_array()
            .ok_or_else(|| LiftError::Json("report must be an array".into()))?;
        let entries = arr
            .iter()
            .map(|e| {
                let kind = e["check"]
                    .as_str()
                    .and_then(CheckKind::parse)
                    .ok_or_else(|| LiftError::Json("bad check kind".into()))?;
                Ok(CheckEntry {
                    kind,
                    subject: str_field(e, "subject")?,
                    pass: e["pass"]
                        .as_bool()
                        .ok_or_else(|| LiftError::Json("bad pass flag".into()))?,
                    detail: str_field(e, "detail")?,
                })
            })
            .collect::<Result<_, LiftError>>()?;
        Ok(CheckReport { entries })
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in &self.entries {
            let mark = if e.pass { "pass" } else { "FAIL" };
            writeln!(
                f,
                "{mark} {:<8} {:<10} {}",
                e.kind.name(),
                e.subject,
                e.detail
            )?;
        }
        let failed = self.failures().count();
        write!(f, "{} checks, {} failed", self.entries.len(), failed)
    }
}

/// Bulk and point data claimed to be a critical point of the deformed potential.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub n: usize,
    pub m: usize,
    pub t: Q,
    /// Precision `N` the data is stored to.
    pub cap: Q,
    /// The weakest per-gradient order `N − spread` that is checked.
    pub n_check: Q,
    pub bulk: BulkParameter,
    pub point: Assignment,
    pub leading: LeadingValues,
    /// The exact split solution the lift started from (absent for `n = 3`).
    pub provenance: Option<SltSolution>,
    pub report: CheckReport,
}

impl Certificate {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        n: usize,
        m: usize,
        t: Q,
        cap: Q,
        bulk: BulkParameter,
        point: Assignment,
        leading: LeadingValues,
        provenance: Option<SltSolution>,
    ) -> Self {
        let n_check = weakest_order(n, m, &t, &cap);
        Certificate {
            n,
            m,
            t,
            cap,
            n_check,
            bulk,
            point,
            leading,
            provenance,
            report: CheckReport::default(),
        }
    }

    pub fn to_json(&self) -> Value {
        let point: Map<String, Value> = self
            .point
            .iter()
            .map(|(c, s)| (c.key(), s.to_json()))
            .collect();
        let idx = |m: &BTreeMap<usize, Q>| -> Value {
            Value::Object(
                m.iter()
                    .map(|(i, v)| (i.to_string(), Value::String(fmt_q(v))))
                    .collect(),
            )
        };
        json!({
            "version": FORMAT_VERSION,
            "n": self.n,
            "m": self.m,
            "t": fmt_q(&self.t),
            "N": fmt_q(&self.cap),
            "n_check": fmt_q(&self.n_check),
            "bulk": self.bulk.to_json(),
            "point": Value::Object(point),
            "slt_leading": {
                "y": sltsolve::cell_map_json(&self.leading.y),
                "c_hor": idx(&self.leading.c_hor),
                "c_ver": idx(&self.leading.c_ver),
            },
            "provenance": self.provenance.as_ref().map_or(Value::Null, SltSolution::to_json),
            "report": self.report.to_json(),
        })
    }

    pub fn from_json(v: &Value) -> Result<Self, LiftError> {
        let usize_of = |key: &str| {
            v[key]
                .as_u64()
                .map(|x| x as usize)
                .ok_or_else(|| LiftError::Json(format!("missing integer field {key}")))
        };
        let q_of = |key: &str| {
            v[key]
                .as_str()
                .and_then(parse_q)
                .ok_or_else(|| LiftError::Json(format!("missing rational field {key}")))
        };
        let bulk = BulkParameter::from_json(&v["bulk"])
            .ok_or_else(|| LiftError::Json("malformed bulk".into()))?;
        let point = v["point"]
            .as_object()
            .ok_or_else(|| LiftError::Json("point must be an object".into()))?
            .iter()
            .map(|(k, s)| {
                let c =
                    Cell::parse_key(k).ok_or_else(|| LiftError::Json(format!("bad cell {k}")))?;
                let s = Series::from_json(s)
                    .ok_or_else(|| LiftError::Json(format!("bad series at {k}")))?;
                Ok((c, s))
            })
            .collect::<Result<Assignment, LiftError>>()?;
        let lead = &v["slt_leading"];
        let idx = |w: &Value| -> Result<BTreeMap<usize, Q>, LiftError> {
            w.as_object()
                .ok_or_else(|| LiftError::Json("leading bulk must be an object".into()))?
                .iter()
                .map(|(k, x)| {
                    let i = k
                        .parse()
                        .map_err(|_| LiftError::Json(format!("bad index {k}")))?;
                    let q = x
                        .as_str()
                        .and_then(parse_q)
                        .ok_or_else(|| LiftError::Json(format!("bad rational at {k}")))?;
                    Ok((i, q))
                })
                .collect()
        };
        let leading = LeadingValues {
            y: sltsolve::cell_map_from_json(&lead["y"])
                .map_err(|e| LiftError::Json(e.to_string()))?,
            c_hor: idx(&lead["c_hor"])?,
            c_ver: idx(&lead["c_ver"])?,
        };
        let provenance = match &v["provenance"] {
            Value::Null => None,
            p => Some(SltSolution::from_json(p).map_err(|e| LiftError::Json(e.to_string()))?),
        };
        let report = match &v["report"] {
            Value::Null => CheckReport::default(),
            r => CheckReport::from_json(r)?,
        };
        Ok(Certificate {
            n: usize_of("n")?,
            m: usize_of("m")?,
            t: q_of("t")?,
            cap: q_of("N")?,
            n_check: q_of("n_check")?,
            bulk,
            point,
            leading,
            provenance,
            report,
        })
    }
}

fn str_field(v: &Value, key: &str) -> Result<String, LiftError> {
    v[key]
        .as_str()
        .map(str::to_string)
        .ok_or_else(|| LiftError::Json(format!("missing string field {key}")))
}

/// `min over (i,j)` of `N − spread_{(i,j)}`, the spread being the largest
/// exponent offset inside the normalized gradient at `(i,j)`.
fn weakest_order(n: usize, m: usize, t: &Q, cap: &Q) -> Q {
    let Ok(point) = segment_point(n, m, t) else {
        return cap.clone();
    };
    let w = build_potential(&point);
    let cells = gamma(n).unwrap_or_default();
    let probe = Q::from_integer(1.into());
    let ones: Assignment = cells
        .iter()
        .map(|&c| (c, Series::one(probe.clone())))
        .collect();
    cells
        .into_iter()
        .filter_map(|c| normalized_gradient(&w, c, &ones, &probe).ok())
        .map(|g| cap - &g.spread)
        .min()
        .unwrap_or_else(|| cap.clone())
}

/// Re-evaluates everything through the `potential` crate: unit valuations of
/// every point and bulk entry, each normalized gradient modulo
/// `T^{N − spread}`, and constant terms against the stored leading values.
pub fn verify_certificate(cert: &Certificate) -> CheckReport {
    let mut entries = Vec::new();
    let mut push = |kind, subject: String, pass, detail: String| {
        entries.push(CheckEntry {
            kind,
            subject,
            pass,
            detail,
        })
    };
    for (c, s) in &cert.point {
        push(
            CheckKind::Unit,
            format!("y {}", c.key()),
            s.is_unit(),
            format!("valuation {}", show_val(s)),
        );
    }
    for (kind, map) in [("c_hor", &cert.bulk.c_hor), ("c_ver", &cert.bulk.c_ver)] {
        for (i, s) in map {
            push(
                CheckKind::Unit,
                format!("{kind} {i}"),
                s.is_unit(),
                format!("valuation {}", show_val(s)),
            );
        }
    }
    let cells = match gamma(cert.n) {
        Ok(c) => c,
        Err(e) => {
            push(CheckKind::Gradient, "shape".into(), false, e.to_string());
            return CheckReport { entries };
        }
    };
    for c in &cells {
        if !cert.point.contains_key(c) {
            push(
                CheckKind::Unit,
                format!("y {}", c.key()),
                false,
                "missing".into(),
            );
        }
    }
    match segment_point(cert.n, cert.m, &cert.t)
        .map_err(|e| e.to_string())
        .and_then(|p| apply_bulk(&build_potential(&p), &cert.bulk).map_err(|e| e.to_string()))
    {
        Err(e) => push(CheckKind::Gradient, "potential".into(), false, e),
        Ok(wb) => {
            for &c in &cells {
                let subject = c.key();
                match normalized_gradient(&wb, c, &cert.point, &cert.cap) {
                    Err(e) => push(CheckKind::Gradient, subject, false, e.to_string()),
                    Ok(g) => {
                        let order = &cert.cap - &g.spread;
                        let zero = g.value.is_zero();
                        let precise = g.value.cap() >= &order;
                        let detail = if zero {
                            format!(
                                "0 mod T^{} (required {})",
                                fmt_q_short(g.value.cap()),
                                fmt_q_short(&order)
                            )
                        } else {
                            let (e, a) = g.value.leading().expect("nonzero series");
                            format!("residual {}T^{}", fmt_q_short(a), fmt_q_short(e))
                        };
                        push(CheckKind::Gradient, subject, zero && precise, detail);
                    }
                }
            }
        }
    }
    for (c, v) in &cert.leading.y {
        let subject = format!("y {}", c.key());
        match cert.point.get(c) {
            None => push(CheckKind::Leading, subject, false, "missing".into()),
            Some(s) => {
                let got = s.constant_term();
                push(
                    CheckKind::Leading,
                    subject,
                    &got == v,
                    format!("{} vs {}", fmt_q_short(&got), fmt_q_short(v)),
                );
            }
        }
    }
    for (kind, name, map) in [
        (FacetKind::Horizontal, "c_hor", &cert.leading.c_hor),
        (FacetKind::Vertical, "c_ver", &cert.leading.c_ver),
    ] {
        for (i, v) in map {
            let got = cert
                .bulk
                .get(kind, *i)
                .map_or_else(|| Q::from_integer(1.into()), Series::constant_term);
            push(
                CheckKind::Leading,
                format!("{name} {i}"),
                &got == v,
                format!("{} vs {}", fmt_q_short(&got), fmt_q_short(v)),
            );
        }
    }
    CheckReport { entries }
}

fn show_val(s: &Series) -> String {
    match s.valuation() {
        novikov::Valuation::Zero => "infinite".into(),
        novikov::Valuation::Finite(v) => fmt_q_short(&v),
    }
}

/// Seed search, exact split solution, inner and outer lift, and the check.
pub fn certify(n: usize, m: usize, t: &Q, cap: &Q) -> Result<Certificate, LiftError> {
    if n == 3 {
        return Err(LiftError::UseFl3);
    }
    check_t(t)?;
    let found = find_generic_seed(n, m).map_err(LiftError::Search)?;
    let slt = solve_slt(&found.seed).map_err(LiftError::Solve)?;
    certify_from_slt(&slt, t, cap)
}

/// The lift and check for a given exact split solution.
pub fn certify_from_slt(slt: &SltSolution, t: &Q, cap: &Q) -> Result<Certificate, LiftError> {
    check_t(t)?;
    let (n, m) = (slt.n(), slt.m());
    let report = slt.verify();
    if !report.all_zero() {
        return Err(LiftError::Solve(sltsolve::SltError::InvalidSeed(
            report.to_string(),
        )));
    }
    let data = BoundaryData {
        d_mm: slt.seed.d_mm().clone(),
        column: (1..=m)
            .filter_map(|s| {
                slt.seed
                    .values
                    .get(&Cell::new(s, m + 1))
                    .map(|v| (s, v.clone()))
            })
            .collect(),
    };
    let inner = lift_inside(n, m, t, cap, &data)?;
    let (bulk, point) = lift_outside(slt, inner, cap)?;
    let mut cert = Certificate::new(
        n,
        m,
        t.clone(),
        cap.clone(),
        bulk,
        point,
        LeadingValues::from_slt(slt),
        Some(slt.clone()),
    );
    cert.report = verify_certificate(&cert);
    if !cert.report.all_pass() {
        let first = cert.report.failures().next().cloned();
        return Err(LiftError::Rejected(first.map_or_else(String::new, |e| {
            format!("{} {}: {}", e.kind.name(), e.subject, e.detail)
        })));
    }
    Ok(cert)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn check_kind_names_round_trip() {
        for k in [CheckKind::Unit, CheckKind::Gradient, CheckKind::Leading] {
            assert_eq!(CheckKind::parse(k.name()), Some(k));
        }
        assert_eq!(CheckKind::parse("other"), None);
    }

    #[test]
    fn empty_report_does_not_pass() {
        assert!(!CheckReport::default().all_pass());
    }

    #[test]
    fn weakest_order_subtracts_the_spread() {
        let t = Q::new(1.into(), 3.into());
        // Fl(3): the largest offset, in the (1,2) and (2,1) gradients, is 2t
        assert_eq!(
            weakest_order(3, 2, &t, &Q::from_integer(4.into())),
            Q::new(10.into(), 3.into())
        );
    }
}
