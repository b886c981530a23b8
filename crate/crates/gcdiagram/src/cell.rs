use std::cmp::Ordering;
use std::fmt;

use crate::DiagramError;

/// A double index `(i, j)`: row `i`, column `j`, both 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cell {
    pub i: usize,
    pub j: usize,
}

impl Cell {
    pub const fn new(i: usize, j: usize) -> Self {
        Cell { i, j }
    }

    /// Diagonal index `i + j`.
    pub fn diag(&self) -> usize {
        self.i + self.j
    }

    /// `"i,j"`, the key used in JSON maps.
    pub fn key(&self) -> String {
        format!("{},{}", self.i, self.j)
    }

    pub fn parse_key(s: &str) -> Option<Cell> {
        let (a, b) = s.split_once(',')?;
        let i = a.trim().parse().ok()?;
        let j = b.trim().parse().ok()?;
        (i >= 1 && j >= 1).then_some(Cell { i, j })
    }

    /// Compares by diagonal, then by row.
    pub fn cmp_hor(&self, other: &Cell) -> Ordering {
        (self.diag(), self.i).cmp(&(other.diag(), other.i))
    }

    /// Compares by diagonal, then by column.
    pub fn cmp_ver(&self, other: &Cell) -> Ordering {
        (self.diag(), self.j).cmp(&(other.diag(), other.j))
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.i, self.j)
    }
}

pub fn order_hor_less(a: Cell, b: Cell) -> bool {
    a.cmp_hor(&b) == Ordering::Less
}

pub fn order_ver_less(a: Cell, b: Cell) -> bool {
    a.cmp_ver(&b) == Ordering::Less
}

/// All cells of `Γ(n)`, listed in the horizontal order.
pub fn gamma(n: usize) -> Result<Vec<Cell>, DiagramError> {
    if n < 3 {
        return Err(DiagramError::SizeTooSmall(n));
    }
    let mut out = Vec::with_capacity(n * (n - 1) / 2);
    for d in 2..=n {
        for i in 1..d {
            out.push(Cell::new(i, d - i));
        }
    }
    Ok(out)
}

/// A ladder diagram `Γ(n)` together with a box `B(m)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Shape {
    pub n: usize,
    pub m: usize,
}

impl Shape {
    /// Validates `n ≥ 4` and `2 ≤ m ≤ ⌊n/2⌋`. For even `n` the upper end is
    /// `m = n/2 = ⌈n/2⌉`, the maximal box.
    pub fn new(n: usize, m: usize) -> Result<Self, DiagramError> {
        if n < 3 {
            return Err(DiagramError::SizeTooSmall(n));
        }
        if m < 2 || 2 * m > n {
            return Err(DiagramError::BoxOutOfRange { n, m });
        }
        Ok(Shape { n, m })
    }

    /// `k = ⌈n/2⌉`.
    pub fn k(&self) -> usize {
        self.n.div_ceil(2)
    }

    /// The box touches the top diagonal (`n = 2m`).
    pub fn is_maximal_box(&self) -> bool {
        2 * self.m == self.n
    }

    pub fn contains(&self, c: Cell) -> bool {
        c.i >= 1 && c.j >= 1 && c.diag() <= self.n
    }

    pub fn is_frozen(&self, c: Cell) -> bool {
        c.i >= 1 && c.j >= 1 && c.diag() == self.n + 1
    }

    pub fn in_box(&self, c: Cell) -> bool {
        c.i >= 1 && c.j >= 1 && c.i <= self.m && c.j <= self.m
    }

    pub fn cells(&self) -> Vec<Cell> {
        gamma(self.n).expect("validated shape")
    }

    /// Cells of `Γ(n)` outside the box, plus the corner `(m,m)`.
    pub fn outside_cells(&self) -> Vec<Cell> {
        self.cells()
            .into_iter()
            .filter(|&c| !self.in_box(c) || c == Cell::new(self.m, self.m))
            .collect()
    }

    pub fn box_cells(&self) -> Vec<Cell> {
        self.cells()
            .into_iter()
            .filter(|&c| self.in_box(c))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gamma_examples() {
        assert_eq!(
            gamma(3).unwrap(),
            vec![Cell::new(1, 1), Cell::new(1, 2), Cell::new(2, 1)]
        );
        assert_eq!(gamma(6).unwrap().len(), 15);
        assert_eq!(gamma(2), Err(DiagramError::SizeTooSmall(2)));
    }

    #[test]
    fn order_examples() {
        assert!(order_hor_less(Cell::new(1, 2), Cell::new(2, 1)));
        assert!(order_hor_less(Cell::new(2, 2), Cell::new(1, 4)));
        assert!(order_ver_less(Cell::new(2, 1), Cell::new(1, 2)));
        assert!(!order_hor_less(Cell::new(2, 1), Cell::new(2, 1)));
    }

    #[test]
    fn shape_ranges() {
        assert!(Shape::new(7, 3).is_ok());
        assert!(Shape::new(7, 4).is_err());
        assert!(Shape::new(8, 4).unwrap().is_maximal_box());
        assert!(Shape::new(6, 1).is_err());
        let s = Shape::new(6, 2).unwrap();
        assert_eq!(s.k(), 3);
        assert_eq!(s.outside_cells().len(), 15 - 4 + 1);
        assert!(s.is_frozen(Cell::new(3, 4)));
    }

    #[test]
    fn keys() {
        assert_eq!(Cell::new(3, 12).key(), "3,12");
        assert_eq!(Cell::parse_key("3,12"), Some(Cell::new(3, 12)));
        assert_eq!(Cell::parse_key("0,1"), None);
    }
}
