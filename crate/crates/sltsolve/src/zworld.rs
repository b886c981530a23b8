//! The rescaled `z` coordinates, in which only the top equations see the bulk.

use std::collections::BTreeMap;
use std::fmt;

use gcdiagram::{Cell, Shape};
use novikov::Q;
use num_traits::{One, Zero};

use crate::SltError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FailureKind {
    /// An isolated value came out as zero.
    Vanishing,
    /// A division by zero.
    Pole,
    /// A referenced value has not been determined yet.
    Missing,
}

impl fmt::Display for FailureKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FailureKind::Vanishing => "vanishing value",
            FailureKind::Pole => "pole",
            FailureKind::Missing => "missing value",
        })
    }
}

/// Where the generation of a chain from a seed broke down.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenFailure {
    /// The equation `k_{(i,j)}` being solved.
    pub equation: Cell,
    /// The component the equation isolates, or the cell that was missing.
    pub component: Option<Cell>,
    pub kind: FailureKind,
    /// Whether the equation sits on the top diagonal `i + j = n`.
    pub top: bool,
}

impl fmt::Display for GenFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} in equation {}", self.kind, self.equation)?;
        if let Some(c) = self.component {
            write!(f, " (component {c})")?;
        }
        if self.top {
            write!(f, " on the top diagonal")?;
        }
        Ok(())
    }
}

/// Working values during generation: `z` on `Γ(n) \ B(m) ∪ {(m,m)}` and the
/// running bulk products `P_hor(i) = ∏_{r=k}^{i} c^hor_{r,r+1}`,
/// `P_ver(j) = ∏_{r=k}^{j} c^ver_{r+1,r}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZState {
    pub shape: Shape,
    pub z: BTreeMap<Cell, Q>,
    pub p_hor: BTreeMap<usize, Q>,
    pub p_ver: BTreeMap<usize, Q>,
}

impl ZState {
    /// Fresh state holding only `z_{m,m}` and the fixed products.
    pub fn new(shape: Shape, d_mm: Q) -> Self {
        let k = shape.k();
        let mut p_hor = BTreeMap::from([(k - 1, Q::one())]);
        let mut p_ver = BTreeMap::from([(k - 1, Q::one())]);
        if shape.n.is_multiple_of(2) {
            p_ver.insert(k, Q::one());
            if shape.m == k {
                p_hor.insert(k, Q::one());
            }
        }
        let z = BTreeMap::from([(Cell::new(shape.m, shape.m), d_mm)]);
        ZState {
            shape,
            z,
            p_hor,
            p_ver,
        }
    }

    fn missing(&self, equation: Cell, cell: Cell) -> GenFailure {
        GenFailure {
            equation,
            component: Some(cell),
            kind: FailureKind::Missing,
            top: equation.diag() == self.shape.n,
        }
    }

    fn pole(&self, equation: Cell) -> GenFailure {
        GenFailure {
            equation,
            component: None,
            kind: FailureKind::Pole,
            top: equation.diag() == self.shape.n,
        }
    }

    /// `z` on the anti-diagonal, where `y = 1`.
    pub fn frozen_value(&self, equation: Cell, a: usize, b: usize) -> Result<Q, GenFailure> {
        let k = self.shape.k();
        let lookup = |map: &BTreeMap<usize, Q>, idx: usize| {
            map.get(&idx)
                .cloned()
                .ok_or_else(|| self.missing(equation, Cell::new(a, b)))
        };
        if a > k {
            let p = lookup(&self.p_hor, a - 1)?;
            if p.is_zero() {
                return Err(self.pole(equation));
            }
            Ok(p.recip())
        } else if b > k {
            lookup(&self.p_ver, b - 1)
        } else {
            Ok(Q::one())
        }
    }

    /// A value referenced by the equation at `equation`; `None` means the term
    /// carrying it is dropped.
    pub fn neighbor(&self, equation: Cell, a: usize, b: usize) -> Result<Option<Q>, GenFailure> {
        let (n, m) = (self.shape.n, self.shape.m);
        if a == 0 || b == 0 {
            return Ok(None);
        }
        if a <= m && b <= m && (a, b) != (m, m) {
            return Ok(None);
        }
        if a + b == n + 1 {
            return self.frozen_value(equation, a, b).map(Some);
        }
        let c = Cell::new(a, b);
        self.z
            .get(&c)
            .cloned()
            .map(Some)
            .ok_or_else(|| self.missing(equation, c))
    }

    fn inverse(&self, equation: Cell, v: Option<Q>) -> Result<Q, GenFailure> {
        match v {
            None => Ok(Q::zero()),
            Some(v) if v.is_zero() => Err(self.pole(equation)),
            Some(v) => Ok(v.recip()),
        }
    }

    /// The equation at `(i,j)` solved for its successor: for `i ≥ j` the value
    /// `1/z_{i+1,j} = −1/z_{i,j−1} + (z_{i,j+1} + z_{i−1,j})/z_{i,j}²`, for
    /// `i < j` the value `z_{i,j+1} = −z_{i−1,j} + z_{i,j}²(1/z_{i+1,j} + 1/z_{i,j−1})`.
    /// On the top diagonal the successor is frozen, so these are `P_hor(i)` and
    /// `P_ver(j)` respectively.
    pub fn k_form(&self, i: usize, j: usize) -> Result<Q, GenFailure> {
        let eq = Cell::new(i, j);
        let zij = self
            .neighbor(eq, i, j)?
            .ok_or_else(|| self.missing(eq, eq))?;
        if zij.is_zero() {
            return Err(self.pole(eq));
        }
        let sq = &zij * &zij;
        let or_zero = |v: Option<Q>| v.unwrap_or_else(Q::zero);
        if i >= j {
            let left = self.inverse(eq, self.neighbor(eq, i, j - 1)?)?;
            let right = or_zero(self.neighbor(eq, i, j + 1)?);
            let up = or_zero(self.neighbor(eq, i - 1, j)?);
            Ok((right + up) / sq - left)
        } else {
            let up = or_zero(self.neighbor(eq, i - 1, j)?);
            let down = self.inverse(eq, self.neighbor(eq, i + 1, j)?)?;
            let left = self.inverse(eq, self.neighbor(eq, i, j - 1)?)?;
            Ok(sq * (down + left) - up)
        }
    }

    /// The cell the equation at `(i,j)` is solved for.
    pub fn successor(i: usize, j: usize) -> Cell {
        if i >= j {
            Cell::new(i + 1, j)
        } else {
            Cell::new(i, j + 1)
        }
    }

    /// Solves the equation at `(i,j)` for its successor and stores it.
    pub fn isolate(&mut self, i: usize, j: usize) -> Result<(), GenFailure> {
        let v = self.k_form(i, j)?;
        let target = Self::successor(i, j);
        if v.is_zero() {
            return Err(GenFailure {
                equation: Cell::new(i, j),
                component: Some(target),
                kind: FailureKind::Vanishing,
                top: i + j == self.shape.n,
            });
        }
        let value = if i >= j { v.recip() } else { v };
        self.z.insert(target, value);
        Ok(())
    }

    /// Leading bulk values `c^hor_{i,i+1} = P_hor(i)/P_hor(i−1)` for `i ≥ k`.
    pub fn bulk_hor(&self) -> BTreeMap<usize, Q> {
        ratios(&self.p_hor, self.shape.k())
    }

    pub fn bulk_ver(&self) -> BTreeMap<usize, Q> {
        ratios(&self.p_ver, self.shape.k())
    }

    /// `y` values on `Γ(n) \ B(m) ∪ {(m,m)}`.
    pub fn to_y(&self) -> Result<BTreeMap<Cell, Q>, SltError> {
        coordinate_change_to_y(&self.z, &self.bulk_hor(), &self.bulk_ver(), &self.shape)
    }
}

fn ratios(p: &BTreeMap<usize, Q>, k: usize) -> BTreeMap<usize, Q> {
    p.iter()
        .filter(|(&i, _)| i >= k)
        .filter_map(|(&i, v)| p.get(&(i - 1)).map(|prev| (i, v / prev)))
        .collect()
}

/// Running products `∏_{r=k}^{i} c_r` for every `i` up to `n − 1`, missing
/// factors counting as 1.
fn products(c: &BTreeMap<usize, Q>, shape: &Shape) -> Result<BTreeMap<usize, Q>, SltError> {
    let k = shape.k();
    let mut out = BTreeMap::new();
    let mut acc = Q::one();
    out.insert(k - 1, acc.clone());
    for r in k..shape.n {
        if let Some(v) = c.get(&r) {
            if v.is_zero() {
                return Err(SltError::ZeroBulk(r));
            }
            acc *= v;
        }
        out.insert(r, acc.clone());
    }
    Ok(out)
}

fn factor(cell: Cell, ph: &BTreeMap<usize, Q>, pv: &BTreeMap<usize, Q>, k: usize) -> Q {
    // z = y / P_hor(a−1) below row k, z = P_ver(b−1) y right of column k
    if cell.i > k {
        ph[&(cell.i - 1)].recip()
    } else if cell.j > k {
        pv[&(cell.j - 1)].clone()
    } else {
        Q::one()
    }
}

pub fn coordinate_change_to_z(
    y: &BTreeMap<Cell, Q>,
    c_hor: &BTreeMap<usize, Q>,
    c_ver: &BTreeMap<usize, Q>,
    shape: &Shape,
) -> Result<BTreeMap<Cell, Q>, SltError> {
    let (ph, pv) = (products(c_hor, shape)?, products(c_ver, shape)?);
    Ok(y.iter()
        .map(|(&c, v)| (c, v * factor(c, &ph, &pv, shape.k())))
        .collect())
}

pub fn coordinate_change_to_y(
    z: &BTreeMap<Cell, Q>,
    c_hor: &BTreeMap<usize, Q>,
    c_ver: &BTreeMap<usize, Q>,
    shape: &Shape,
) -> Result<BTreeMap<Cell, Q>, SltError> {
    let (ph, pv) = (products(c_hor, shape)?, products(c_ver, shape)?);
    Ok(z.iter()
        .map(|(&c, v)| (c, v / factor(c, &ph, &pv, shape.k())))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use novikov::{q, qf};

    #[test]
    fn first_row_change() {
        let shape = Shape::new(7, 2).unwrap();
        let y = BTreeMap::from([(Cell::new(5, 1), q(3)), (Cell::new(1, 5), q(3))]);
        let c_hor = BTreeMap::from([(4, q(2))]);
        let c_ver = BTreeMap::from([(4, q(5))]);
        let z = coordinate_change_to_z(&y, &c_hor, &c_ver, &shape).unwrap();
        assert_eq!(z[&Cell::new(5, 1)], qf(3, 2));
        assert_eq!(z[&Cell::new(1, 5)], q(15));
        assert_eq!(
            coordinate_change_to_y(&z, &c_hor, &c_ver, &shape).unwrap(),
            y
        );
    }

    #[test]
    fn frozen_values_follow_products() {
        let shape = Shape::new(7, 2).unwrap();
        let mut st = ZState::new(shape, q(1));
        st.p_hor.insert(4, q(3));
        st.p_ver.insert(4, q(5));
        let eq = Cell::new(1, 1);
        assert_eq!(st.frozen_value(eq, 5, 3).unwrap(), qf(1, 3));
        assert_eq!(st.frozen_value(eq, 3, 5).unwrap(), q(5));
        assert_eq!(st.frozen_value(eq, 4, 4).unwrap(), q(1));
        assert_eq!(
            st.frozen_value(eq, 6, 2).unwrap_err().kind,
            FailureKind::Missing
        );
    }
}
