//! Term lists of the normalized gradient and order-by-order isolation of one
//! unknown per equation.
//!
//! The equations here are assembled straight from the facet description of the
//! polytope; the checker goes through the `potential` crate instead, so the two
//! sides do not share the code that writes the equations down.

use std::collections::BTreeMap;

use gcdiagram::{segment_point, Cell, FacetKind, GcPoint, Shape};
use novikov::{q, Series, Q};
use num_traits::Zero;

use crate::{LiftError, Stage};

/// `sign · c · y_num / y_den · T^{shift}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradTerm {
    pub sign: i64,
    pub bulk: (FacetKind, usize),
    pub num: Cell,
    pub den: Cell,
    /// Exponent of `T` relative to the least exponent in the gradient.
    pub shift: Q,
}

/// `∂_{(i,j)} W` divided by its leading power of `T`.
pub fn gradient_terms(point: &GcPoint, at: Cell) -> Vec<GradTerm> {
    let n = point.n;
    let u = |c: Cell| point.coord(c).expect("cell of the diagram or its boundary");
    let mut raw = Vec::new();
    for i in 1..n {
        for j in 1..=n - i {
            let here = Cell::new(i, j);
            for (kind, num, den, idx) in [
                (FacetKind::Vertical, Cell::new(i, j + 1), here, j),
                (FacetKind::Horizontal, here, Cell::new(i + 1, j), i),
            ] {
                let sign = i64::from(num == at) - i64::from(den == at);
                if sign != 0 {
                    raw.push((sign, (kind, idx), num, den, u(num) - u(den)));
                }
            }
        }
    }
    let nu = raw
        .iter()
        .map(|r| r.4.clone())
        .min()
        .unwrap_or_else(Q::zero);
    raw.into_iter()
        .map(|(sign, bulk, num, den, e)| GradTerm {
            sign,
            bulk,
            num,
            den,
            shift: e - &nu,
        })
        .collect()
}

/// What an equation is solved for.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Unknown {
    Cell(Cell),
    /// `P_hor(i)`, seen through the anti-diagonal entry `z_{i+1,·} = 1/P_hor(i)`.
    ProductHor(usize),
    /// `P_ver(j)`, seen through the anti-diagonal entry `z_{·,j+1} = P_ver(j)`.
    ProductVer(usize),
    Bulk(FacetKind, usize),
}

/// Working series during a lift.
#[derive(Clone, Debug)]
pub struct LiftState {
    pub shape: Shape,
    pub point: GcPoint,
    /// Working cap, above the target precision by a safety margin.
    pub cap: Q,
    pub z: BTreeMap<Cell, Series>,
    pub p_hor: BTreeMap<usize, Series>,
    pub p_ver: BTreeMap<usize, Series>,
    /// Bulk coefficients entering the equations directly (empty in the
    /// rescaled coordinates, where only the products appear).
    pub bulk: BTreeMap<(FacetKind, usize), Series>,
    pub stage: Stage,
}

impl LiftState {
    pub fn new(shape: Shape, t: &Q, cap: Q) -> Result<Self, LiftError> {
        let point =
            segment_point(shape.n, shape.m, t).map_err(|e| LiftError::Range(e.to_string()))?;
        Ok(Self::at_point(shape, point, cap))
    }

    /// A state for `point` with the products fixed by the parity of `n`.
    pub fn at_point(shape: Shape, point: GcPoint, cap: Q) -> Self {
        let k = shape.k();
        let one = Series::one(cap.clone());
        let mut p_hor = BTreeMap::from([(k - 1, one.clone())]);
        let mut p_ver = BTreeMap::from([(k - 1, one.clone())]);
        if shape.n.is_multiple_of(2) {
            if shape.m < k {
                p_ver.insert(k, one.clone());
            } else {
                p_hor.insert(k, one);
            }
        }
        LiftState {
            shape,
            point,
            cap,
            z: BTreeMap::new(),
            p_hor,
            p_ver,
            bulk: BTreeMap::new(),
            stage: Stage::Inside,
        }
    }

    pub fn constant(&self, v: &Q) -> Series {
        Series::constant(v.clone(), self.cap.clone())
    }

    fn degenerate(&self, equation: Cell, detail: impl Into<String>) -> LiftError {
        LiftError::Degenerate {
            stage: self.stage,
            equation,
            detail: detail.into(),
        }
    }

    fn inverse(&self, s: &Series, equation: Cell, what: &str) -> Result<Series, LiftError> {
        s.invert_unit()
            .map_err(|_| self.degenerate(equation, format!("{what} is not a unit: {s}")))
    }

    /// The current value of `z` at `c`, anti-diagonal entries included.
    pub fn value(&self, c: Cell, equation: Cell) -> Result<Series, LiftError> {
        let (n, k) = (self.shape.n, self.shape.k());
        let product = |map: &BTreeMap<usize, Series>, idx: usize| {
            map.get(&idx).cloned().ok_or_else(|| {
                self.degenerate(equation, format!("product at {idx} not yet known for {c}"))
            })
        };
        if c.i + c.j == n + 1 {
            if c.i > k {
                let p = product(&self.p_hor, c.i - 1)?;
                self.inverse(&p, equation, "horizontal product")
            } else if c.j > k {
                product(&self.p_ver, c.j - 1)
            } else {
                Ok(Series::one(self.cap.clone()))
            }
        } else {
            self.z
                .get(&c)
                .cloned()
                .ok_or_else(|| self.degenerate(equation, format!("value at {c} not yet known")))
        }
    }

    fn involves(&self, unknown: Unknown, c: Cell) -> bool {
        let (n, k) = (self.shape.n, self.shape.k());
        match unknown {
            Unknown::Cell(u) => u == c,
            Unknown::ProductHor(i) => c.i + c.j == n + 1 && c.i > k && c.i - 1 == i,
            Unknown::ProductVer(j) => c.i + c.j == n + 1 && c.j > k && c.j - 1 == j,
            Unknown::Bulk(..) => false,
        }
    }

    fn bulk_of(&self, key: (FacetKind, usize)) -> Series {
        self.bulk
            .get(&key)
            .cloned()
            .unwrap_or_else(|| Series::one(self.cap.clone()))
    }

    /// Solves the normalized gradient equation at `eq` for `unknown`, which
    /// must occur in exactly one term. Fails unless the solution is a unit.
    pub fn isolate(&self, eq: Cell, unknown: Unknown) -> Result<Series, LiftError> {
        let terms = gradient_terms(&self.point, eq);
        let mut rest = Series::zero(self.cap.clone());
        let mut target = None;
        for term in &terms {
            let in_num = self.involves(unknown, term.num);
            let in_den = self.involves(unknown, term.den);
            let in_bulk = matches!(unknown, Unknown::Bulk(kind, i) if (kind, i) == term.bulk);
            if in_num || in_den || in_bulk {
                if target.is_some() {
                    return Err(self.degenerate(eq, "unknown occurs in more than one term"));
                }
                target = Some((term, in_num, in_den));
                continue;
            }
            let num = self.value(term.num, eq)?;
            let den = self.value(term.den, eq)?;
            let v = &(&self.bulk_of(term.bulk) * &num) * &self.inverse(&den, eq, "denominator")?;
            rest = &rest + &v.scale(&q(term.sign)).shift(&term.shift);
        }
        let (term, in_num, in_den) =
            target.ok_or_else(|| self.degenerate(eq, "unknown does not occur"))?;
        // sign · coefficient · X^{±1} · T^{shift} = −rest, everything else known
        let mut known = self.constant(&q(term.sign));
        if !matches!(unknown, Unknown::Bulk(..)) {
            known = &known * &self.bulk_of(term.bulk);
        }
        if !in_num {
            known = &known * &self.value(term.num, eq)?;
        }
        if !in_den {
            let den = self.value(term.den, eq)?;
            known = &known * &self.inverse(&den, eq, "denominator")?;
        }
        let solved = (&(-&rest) * &self.inverse(&known, eq, "coefficient of the unknown")?)
            .shift(&-&term.shift);
        if !solved.is_unit() {
            return Err(self.degenerate(
                eq,
                format!("leading part of the isolated value vanishes or is not a unit: {solved}"),
            ));
        }
        // `solved` is the factor as it appears in the term; anti-diagonal
        // entries below row k carry the horizontal product inverted
        let inverted = in_den != matches!(unknown, Unknown::ProductHor(_));
        if inverted {
            self.inverse(&solved, eq, "isolated value")
        } else {
            Ok(solved)
        }
    }

    /// The normalized gradient at `eq` with the current values.
    pub fn residual(&self, eq: Cell) -> Result<Series, LiftError> {
        let mut acc = Series::zero(self.cap.clone());
        for term in gradient_terms(&self.point, eq) {
            let num = self.value(term.num, eq)?;
            let den = self.value(term.den, eq)?;
            let v = &(&self.bulk_of(term.bulk) * &num) * &self.inverse(&den, eq, "denominator")?;
            acc = &acc + &v.scale(&q(term.sign)).shift(&term.shift);
        }
        Ok(acc)
    }

    /// Bulk coefficients `c_i = P(i)/P(i−1)` for `i ≥ k`.
    pub fn bulk_ratios(
        &self,
        products: &BTreeMap<usize, Series>,
    ) -> Result<BTreeMap<usize, Series>, LiftError> {
        let k = self.shape.k();
        let mut out = BTreeMap::new();
        for i in k..self.shape.n {
            let (Some(p), Some(prev)) = (products.get(&i), products.get(&(i - 1))) else {
                continue;
            };
            let eq = Cell::new(i, self.shape.n - i);
            out.insert(i, p * &self.inverse(prev, eq, "product")?);
        }
        Ok(out)
    }

    /// `y = P_hor(a−1) z` below row `k`, `y = z / P_ver(b−1)` right of column `k`.
    pub fn to_y(&self, c: Cell, z: &Series) -> Result<Series, LiftError> {
        let k = self.shape.k();
        if c.i > k {
            Ok(&self.p_hor[&(c.i - 1)] * z)
        } else if c.j > k {
            Ok(z * &self.inverse(&self.p_ver[&(c.j - 1)], c, "vertical product")?)
        } else {
            Ok(z.clone())
        }
    }
}
