//! Canonical text and JSON forms of a [`PotentialExpr`].
//!
//! Terms are grouped by T-exponent, groups in increasing order of exponent, and
//! inside a group ordered by base exponent, then by the generating cell in the
//! horizontal order, vertical facet first.

use std::cmp::Ordering;

use gcdiagram::{Affine, FacetKind};
use novikov::{fmt_q, fmt_q_short, q, Q};
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::{PotentialExpr, Term};

struct Token<'a> {
    coeff: Q,
    term: &'a Term,
}

fn facet_cmp(a: &Term, b: &Term) -> Ordering {
    let rank = |k: FacetKind| matches!(k, FacetKind::Horizontal) as u8;
    a.facet
        .cell
        .cmp_hor(&b.facet.cell)
        .then(rank(a.facet.kind).cmp(&rank(b.facet.kind)))
}

fn token_text(tok: &Token, first: bool) -> String {
    let mono = tok.term.monomial.to_string();
    let mag = tok.coeff.abs();
    let body = if mag.is_one() {
        mono
    } else if mono == "1" {
        fmt_q_short(&mag)
    } else {
        format!("{}*{}", fmt_q_short(&mag), mono)
    };
    match (first, tok.coeff.is_negative()) {
        (true, false) => body,
        (true, true) => format!("-{body}"),
        (false, false) => format!(" + {body}"),
        (false, true) => format!(" - {body}"),
    }
}

fn render_groups<K: Ord>(groups: Vec<(K, String, Vec<Token>)>) -> String {
    if groups.is_empty() {
        return "0".to_string();
    }
    groups
        .into_iter()
        .map(|(_, exp, toks)| {
            let inner: String = toks
                .iter()
                .enumerate()
                .map(|(idx, t)| token_text(t, idx == 0))
                .collect();
            if exp == "0" {
                format!("({inner})")
            } else {
                format!("({inner})T^{{{exp}}}")
            }
        })
        .collect::<Vec<_>>()
        .join(" + ")
}

/// Exponents written as `a+bt`. Bulk coefficients contribute constant shifts.
pub fn render_symbolic(expr: &PotentialExpr) -> String {
    let mut entries: Vec<(Affine, Q, Token)> = Vec::new();
    for term in &expr.terms {
        for (e, c) in coeff_terms(term) {
            let exp = Affine::new(&term.t_exp.constant + &e, term.t_exp.slope.clone());
            entries.push((exp, e, Token { coeff: c, term }));
        }
    }
    let t = &expr.t;
    entries.sort_by(|a, b| {
        (a.0.at(t), &a.0)
            .cmp(&(b.0.at(t), &b.0))
            .then_with(|| a.2.term.t_value.cmp(&b.2.term.t_value))
            .then_with(|| facet_cmp(a.2.term, b.2.term))
            .then_with(|| a.1.cmp(&b.1))
    });
    let mut groups: Vec<(Affine, String, Vec<Token>)> = Vec::new();
    for (exp, _, tok) in entries {
        match groups.last_mut() {
            Some((k, _, toks)) if *k == exp => toks.push(tok),
            _ => groups.push((exp.clone(), exp.to_string(), vec![tok])),
        }
    }
    render_groups(groups)
}

/// Exponents evaluated at the point's `t`.
pub fn render_numeric(expr: &PotentialExpr) -> String {
    let mut entries: Vec<(Q, Q, Token)> = Vec::new();
    for term in &expr.terms {
        for (e, c) in coeff_terms(term) {
            entries.push((&term.t_value + &e, e, Token { coeff: c, term }));
        }
    }
    entries.sort_by(|a, b| {
        a.0.cmp(&b.0)
            .then_with(|| a.2.term.t_value.cmp(&b.2.term.t_value))
            .then_with(|| facet_cmp(a.2.term, b.2.term))
            .then_with(|| a.1.cmp(&b.1))
    });
    let mut groups: Vec<(Q, String, Vec<Token>)> = Vec::new();
    for (exp, _, tok) in entries {
        match groups.last_mut() {
            Some((k, _, toks)) if *k == exp => toks.push(tok),
            _ => groups.push((exp.clone(), fmt_q_short(&exp), vec![tok])),
        }
    }
    render_groups(groups)
}

/// `(extra exponent, signed coefficient)` pairs of a term's coefficient.
fn coeff_terms(term: &Term) -> Vec<(Q, Q)> {
    let m = q(term.multiplier);
    match &term.coeff {
        None => vec![(Q::zero(), m)],
        Some(s) => s.terms().iter().map(|(e, c)| (e.clone(), c * &m)).collect(),
    }
}

pub fn to_json(expr: &PotentialExpr) -> Value {
    let cell = |c: Option<gcdiagram::Cell>| c.map_or(Value::Null, |c| Value::String(c.key()));
    let terms: Vec<Value> = expr
        .terms
        .iter()
        .map(|t| {
            json!({
                "facet": match t.facet.kind {
                    FacetKind::Horizontal => "horizontal",
                    FacetKind::Vertical => "vertical",
                },
                "cell": t.facet.cell.key(),
                "multiplier": t.multiplier,
                "num": cell(t.monomial.num),
                "den": cell(t.monomial.den),
                "t_exp": t.t_exp.to_string(),
                "t_value": fmt_q(&t.t_value),
                "coeff": t.coeff.as_ref().map_or(Value::Null, |s| s.to_json()),
            })
        })
        .collect();
    json!({
        "n": expr.n,
        "t": fmt_q(&expr.t),
        "text": render_symbolic(expr),
        "terms": terms,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{build_potential, log_gradient};
    use gcdiagram::{segment_point, Cell};
    use novikov::qf;

    #[test]
    fn fl3_symbolic() {
        let w = build_potential(&segment_point(3, 2, &qf(1, 2)).unwrap());
        assert_eq!(
            render_symbolic(&w),
            "(y_{1,2}/y_{1,1} + y_{1,1}/y_{2,1} + y_{1,2} + 1/y_{2,1})T^{1-t} + (1/y_{1,2} + y_{2,1})T^{1+t}"
        );
        assert_eq!(
            render_numeric(&w),
            "(y_{1,2}/y_{1,1} + y_{1,1}/y_{2,1} + y_{1,2} + 1/y_{2,1})T^{1/2} + (1/y_{1,2} + y_{2,1})T^{3/2}"
        );
    }

    #[test]
    fn gradient_signs() {
        let w = build_potential(&segment_point(3, 2, &qf(1, 2)).unwrap());
        let g = log_gradient(&w, Cell::new(2, 1)).unwrap();
        assert_eq!(
            render_symbolic(&g),
            "(-y_{1,1}/y_{2,1} - 1/y_{2,1})T^{1-t} + (y_{2,1})T^{1+t}"
        );
    }

    #[test]
    fn json_mirrors_terms() {
        let w = build_potential(&segment_point(3, 2, &qf(1, 4)).unwrap());
        let v = to_json(&w);
        assert_eq!(v["terms"].as_array().unwrap().len(), 6);
        assert_eq!(v["terms"][0]["num"], "1,2");
        assert_eq!(v["terms"][2]["num"], Value::Null);
        assert_eq!(v["terms"][2]["den"], "1,2");
        assert_eq!(v["terms"][0]["t_value"], "3/4");
    }
}
