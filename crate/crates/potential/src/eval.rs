use std::collections::BTreeMap;

use gcdiagram::Cell;
use novikov::{q, Series, Q};

use crate::{log_gradient, PotentialError, PotentialExpr, Term};

/// Values of the variables `y_{i,j}` on `Γ(n)`.
pub type Assignment = BTreeMap<Cell, Series>;

/// An assignment with the inverses of its unit entries precomputed.
#[derive(Clone, Debug)]
pub struct Substitution<'a> {
    values: &'a Assignment,
    inverses: BTreeMap<Cell, Series>,
}

impl<'a> Substitution<'a> {
    pub fn new(values: &'a Assignment) -> Self {
        let inverses = values
            .iter()
            .filter_map(|(c, v)| v.invert_unit().ok().map(|inv| (*c, inv)))
            .collect();
        Substitution { values, inverses }
    }

    pub fn value(&self, c: Cell) -> Result<&Series, PotentialError> {
        self.values.get(&c).ok_or(PotentialError::Missing(c))
    }

    pub fn inverse(&self, c: Cell) -> Result<&Series, PotentialError> {
        self.value(c)?;
        self.inverses.get(&c).ok_or(PotentialError::NotUnit(c))
    }

    /// `coeff · monomial(y)` without the multiplier and the power of `T`.
    pub fn monomial_value(&self, term: &Term, cap: &Q) -> Result<Series, PotentialError> {
        let mut v = match &term.coeff {
            Some(c) => c.clone(),
            None => Series::one(cap.clone()),
        };
        if let Some(c) = term.monomial.num {
            v = &v * self.value(c)?;
        }
        if let Some(c) = term.monomial.den {
            v = &v * self.inverse(c)?;
        }
        Ok(v)
    }

    /// The full term `multiplier · coeff · monomial(y) · T^{t_value}`.
    pub fn term_value(&self, term: &Term, cap: &Q) -> Result<Series, PotentialError> {
        Ok(self
            .monomial_value(term, cap)?
            .scale(&q(term.multiplier))
            .shift(&term.t_value))
    }

    pub fn evaluate(&self, expr: &PotentialExpr, cap: &Q) -> Result<Series, PotentialError> {
        let mut acc = Series::zero(cap.clone());
        for term in &expr.terms {
            acc = &acc + &self.term_value(term, cap)?;
        }
        Ok(acc.truncate(cap))
    }
}

/// Exact substitution, truncated at `cap`.
pub fn evaluate(expr: &PotentialExpr, y: &Assignment, cap: &Q) -> Result<Series, PotentialError> {
    Substitution::new(y).evaluate(expr, cap)
}

/// `y_c ∂W/∂y_c` divided by `T^ν`, with `ν` the least T-exponent of its terms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalizedGradient {
    pub value: Series,
    /// `None` when no term of `W` involves the variable.
    pub nu: Option<Q>,
    /// Largest `t_value − ν` among the terms.
    pub spread: Q,
}

pub fn normalized_gradient(
    wb: &PotentialExpr,
    at: Cell,
    y: &Assignment,
    cap: &Q,
) -> Result<NormalizedGradient, PotentialError> {
    let g = log_gradient(wb, at)?;
    let sub = Substitution::new(y);
    let Some(nu) = g.min_t_value().cloned() else {
        return Ok(NormalizedGradient {
            value: Series::zero(cap.clone()),
            nu: None,
            spread: q(0),
        });
    };
    let spread = g
        .terms
        .iter()
        .map(|t| &t.t_value - &nu)
        .max()
        .unwrap_or_else(|| q(0));
    let raw = sub.evaluate(&g, &(cap + &nu))?;
    Ok(NormalizedGradient {
        value: raw.shift(&-&nu),
        nu: Some(nu),
        spread,
    })
}
