//! Points of the Gelfand–Cetlin polytope on the segments `I_m(t)`.

use std::collections::BTreeMap;
use std::fmt;

use novikov::{fmt_q_short, q, Q};
use num_traits::{One, Signed, Zero};

use crate::{Cell, DiagramError, Shape};

/// `a + b·t`, the symbolic form of a coordinate along a segment.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Affine {
    pub constant: Q,
    pub slope: Q,
}

impl Affine {
    pub fn new(constant: Q, slope: Q) -> Self {
        Affine { constant, slope }
    }

    pub fn constant(c: Q) -> Self {
        Affine::new(c, Q::zero())
    }

    pub fn at(&self, t: &Q) -> Q {
        &self.constant + &self.slope * t
    }

    pub fn sub(&self, other: &Affine) -> Affine {
        Affine::new(&self.constant - &other.constant, &self.slope - &other.slope)
    }
}

/// Renders as `1-t`, `1+2t`, `2/3`, `t`, `-1/2t`.
impl fmt::Display for Affine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let slope_body = |s: &Q| {
            if s.abs().is_one() {
                "t".to_string()
            } else {
                format!("{}t", fmt_q_short(&s.abs()))
            }
        };
        match (self.constant.is_zero(), self.slope.is_zero()) {
            (_, true) => write!(f, "{}", fmt_q_short(&self.constant)),
            (true, false) => {
                let sign = if self.slope.is_negative() { "-" } else { "" };
                write!(f, "{}{}", sign, slope_body(&self.slope))
            }
            (false, false) => {
                let sign = if self.slope.is_negative() { "-" } else { "+" };
                write!(
                    f,
                    "{}{}{}",
                    fmt_q_short(&self.constant),
                    sign,
                    slope_body(&self.slope)
                )
            }
        }
    }
}

/// A point `u` of the polytope together with its frozen boundary `λ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GcPoint {
    pub n: usize,
    pub t: Q,
    /// Symbolic coordinates on `Γ(n)`.
    pub u: BTreeMap<Cell, Affine>,
    /// `λ_i = n − 2i + 1`, `i = 1..n`.
    pub lambda: Vec<Q>,
}

impl GcPoint {
    /// Symbolic coordinate of a cell of `Γ(n)` or of the anti-diagonal.
    pub fn coord_sym(&self, c: Cell) -> Option<Affine> {
        if c.i >= 1 && c.j >= 1 && c.diag() == self.n + 1 {
            return Some(Affine::constant(self.lambda[c.i - 1].clone()));
        }
        self.u.get(&c).cloned()
    }

    pub fn coord(&self, c: Cell) -> Option<Q> {
        self.coord_sym(c).map(|a| a.at(&self.t))
    }

    /// Checks the interlacing inequalities `u_{i,j+1} ≥ u_{i,j} ≥ u_{i+1,j}`.
    pub fn in_polytope(&self) -> bool {
        self.u.keys().all(|&c| {
            let here = self.coord(c).unwrap();
            let right = self.coord(Cell::new(c.i, c.j + 1)).unwrap();
            let below = self.coord(Cell::new(c.i + 1, c.j)).unwrap();
            right >= here && here >= below
        })
    }
}

fn lambda(n: usize) -> Vec<Q> {
    (1..=n).map(|i| q(n as i64 - 2 * i as i64 + 1)).collect()
}

fn point(n: usize, m: usize, t: &Q) -> GcPoint {
    let mut u = BTreeMap::new();
    for d in 2..=n {
        for i in 1..d {
            let j = d - i;
            let diff = q(j as i64 - i as i64);
            let a = if i.max(j) <= m {
                Affine::new(diff.clone(), -diff)
            } else {
                Affine::constant(diff)
            };
            u.insert(Cell::new(i, j), a);
        }
    }
    GcPoint {
        n,
        t: t.clone(),
        u,
        lambda: lambda(n),
    }
}

/// `u_{i,j}(t) = (j−i)(1−t)` on the box `B(m)`, `j−i` elsewhere.
///
/// For `n = 3` the only segment is the `m = 2` formula, giving `(0, 1−t, −1+t)`.
pub fn segment_point(n: usize, m: usize, t: &Q) -> Result<GcPoint, DiagramError> {
    if n == 3 {
        if m != 2 {
            return Err(DiagramError::BoxOutOfRange { n, m });
        }
    } else {
        Shape::new(n, m)?;
    }
    if t.is_negative() || t > &Q::one() {
        return Err(DiagramError::ParameterOutOfRange(t.to_string()));
    }
    Ok(point(n, m, t))
}

/// The monotone centre `u_{i,j} = j − i`.
pub fn center_point(n: usize) -> Result<GcPoint, DiagramError> {
    if n < 3 {
        return Err(DiagramError::SizeTooSmall(n));
    }
    Ok(point(n, 0, &Q::zero()))
}
