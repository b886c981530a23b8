use std::fmt;

use gcdiagram::{facets, Affine, Cell, Facet, GcPoint};
use novikov::{Series, Q};
use num_traits::Signed;

use crate::{BulkParameter, PotentialError};

/// `num / den` with either side possibly absent (the constant 1).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    pub num: Option<Cell>,
    pub den: Option<Cell>,
}

impl Monomial {
    /// Exponent of `y_c`.
    pub fn exponent(&self, c: Cell) -> i64 {
        i64::from(self.num == Some(c)) - i64::from(self.den == Some(c))
    }

    pub fn variables(&self) -> impl Iterator<Item = Cell> {
        self.num.into_iter().chain(self.den)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let y = |c: Cell| format!("y_{{{},{}}}", c.i, c.j);
        match (self.num, self.den) {
            (None, None) => write!(f, "1"),
            (Some(a), None) => write!(f, "{}", y(a)),
            (None, Some(b)) => write!(f, "1/{}", y(b)),
            (Some(a), Some(b)) => write!(f, "{}/{}", y(a), y(b)),
        }
    }
}

/// One disc contribution `multiplier · coeff · monomial · T^{t_exp}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub facet: Facet,
    /// 1 in `W`; the variable's exponent in a logarithmic derivative.
    pub multiplier: i64,
    /// Bulk coefficient; `None` is 1.
    pub coeff: Option<Series>,
    pub monomial: Monomial,
    pub t_exp: Affine,
    /// `t_exp` at the point's `t`.
    pub t_value: Q,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PotentialExpr {
    pub n: usize,
    pub t: Q,
    pub terms: Vec<Term>,
    /// Facets whose T-exponent is not positive at this point.
    pub degenerate: Vec<Facet>,
}

impl PotentialExpr {
    pub fn contains_variable(&self, c: Cell) -> bool {
        self.terms.iter().any(|t| t.monomial.exponent(c) != 0)
    }

    /// Smallest T-exponent among the terms.
    pub fn min_t_value(&self) -> Option<&Q> {
        self.terms.iter().map(|t| &t.t_value).min()
    }
}

fn variable(point: &GcPoint, c: Cell) -> Option<Cell> {
    (c.diag() <= point.n).then_some(c)
}

/// One term per facet, facets in the horizontal order of their cells with the
/// vertical facet first.
pub fn build_potential(point: &GcPoint) -> PotentialExpr {
    let fs = facets(point.n).expect("points exist only for n ≥ 3");
    let mut terms = Vec::with_capacity(fs.len());
    let mut degenerate = Vec::new();
    for facet in fs {
        let (hi, lo) = facet.cells();
        let t_exp = point
            .coord_sym(hi)
            .expect("facet cells lie in the closed diagram")
            .sub(
                &point
                    .coord_sym(lo)
                    .expect("facet cells lie in the closed diagram"),
            );
        let t_value = t_exp.at(&point.t);
        if !t_value.is_positive() {
            degenerate.push(facet);
        }
        // The larger coordinate's variable goes upstairs for both kinds.
        let monomial = Monomial {
            num: variable(point, hi),
            den: variable(point, lo),
        };
        terms.push(Term {
            facet,
            multiplier: 1,
            coeff: None,
            monomial,
            t_exp,
            t_value,
        });
    }
    PotentialExpr {
        n: point.n,
        t: point.t.clone(),
        terms,
        degenerate,
    }
}

/// Multiplies every term by the bulk coefficient of its facet's Schubert cycle.
pub fn apply_bulk(
    w: &PotentialExpr,
    bulk: &BulkParameter,
) -> Result<PotentialExpr, PotentialError> {
    bulk.validate()?;
    let mut out = w.clone();
    for term in &mut out.terms {
        if let Some(c) = bulk.for_facet(term.facet) {
            term.coeff = Some(match &term.coeff {
                Some(old) => old * c,
                None => c.clone(),
            });
        }
    }
    Ok(out)
}

/// `y_c ∂/∂y_c`, term by term.
pub fn log_gradient(w: &PotentialExpr, at: Cell) -> Result<PotentialExpr, PotentialError> {
    if at.i == 0 || at.j == 0 || at.diag() > w.n {
        return Err(PotentialError::NotInDiagram(at));
    }
    let terms = w
        .terms
        .iter()
        .filter_map(|t| {
            let e = t.monomial.exponent(at);
            (e != 0).then(|| Term {
                multiplier: t.multiplier * e,
                ..t.clone()
            })
        })
        .collect();
    Ok(PotentialExpr {
        n: w.n,
        t: w.t.clone(),
        terms,
        degenerate: w.degenerate.clone(),
    })
}
