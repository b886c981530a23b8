//! Facets of the polytope and the Schubert cycles built from them.

use std::fmt;

use crate::{Cell, DiagramError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FacetKind {
    /// `u_{i,j} = u_{i+1,j}`
    Horizontal,
    /// `u_{i,j+1} = u_{i,j}`
    Vertical,
}

/// A facet of the polytope, named by its generating cell.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Facet {
    pub kind: FacetKind,
    pub cell: Cell,
}

impl Facet {
    pub fn horizontal(i: usize, j: usize) -> Self {
        Facet {
            kind: FacetKind::Horizontal,
            cell: Cell::new(i, j),
        }
    }

    pub fn vertical(i: usize, j: usize) -> Self {
        Facet {
            kind: FacetKind::Vertical,
            cell: Cell::new(i, j),
        }
    }

    /// The two cells whose coordinates coincide on the facet, larger one first.
    pub fn cells(&self) -> (Cell, Cell) {
        let Cell { i, j } = self.cell;
        match self.kind {
            FacetKind::Horizontal => (Cell::new(i, j), Cell::new(i + 1, j)),
            FacetKind::Vertical => (Cell::new(i, j + 1), Cell::new(i, j)),
        }
    }

    /// The index of the Schubert cycle containing this facet.
    pub fn cycle_index(&self) -> usize {
        match self.kind {
            FacetKind::Horizontal => self.cell.i,
            FacetKind::Vertical => self.cell.j,
        }
    }

    fn check(&self, n: usize) -> Result<(), DiagramError> {
        let c = self.cell;
        if c.i == 0 || c.j == 0 || c.diag() > n {
            return Err(DiagramError::NotInDiagram(c));
        }
        Ok(())
    }
}

impl fmt::Display for Facet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (a, b) = self.cells();
        write!(f, "u_{{{},{}}}=u_{{{},{}}}", a.i, a.j, b.i, b.j)
    }
}

/// All facets of the polytope for `Γ(n)`, vertical before horizontal at each cell,
/// cells in the horizontal order.
pub fn facets(n: usize) -> Result<Vec<Facet>, DiagramError> {
    Ok(crate::gamma(n)?
        .into_iter()
        .flat_map(|c| [Facet::vertical(c.i, c.j), Facet::horizontal(c.i, c.j)])
        .collect())
}

/// `P^hor_{i,i+1}` (kind horizontal, index `i`) or `P^ver_{j+1,j}` (vertical, index `j`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchubertCycle {
    pub n: usize,
    pub kind: FacetKind,
    pub index: usize,
    pub facets: Vec<Facet>,
}

impl SchubertCycle {
    pub fn new(n: usize, kind: FacetKind, index: usize) -> Result<Self, DiagramError> {
        if n < 3 {
            return Err(DiagramError::SizeTooSmall(n));
        }
        if index == 0 || index >= n {
            return Err(DiagramError::NotInDiagram(Cell::new(index, 1)));
        }
        let facets = (1..=n - index)
            .map(|s| match kind {
                FacetKind::Horizontal => Facet::horizontal(index, s),
                FacetKind::Vertical => Facet::vertical(s, index),
            })
            .collect();
        Ok(SchubertCycle {
            n,
            kind,
            index,
            facets,
        })
    }

    /// `hor_{i,i+1}` or `ver_{j+1,j}`.
    pub fn label(&self) -> String {
        match self.kind {
            FacetKind::Horizontal => format!("hor_{{{},{}}}", self.index, self.index + 1),
            FacetKind::Vertical => format!("ver_{{{},{}}}", self.index + 1, self.index),
        }
    }
}

/// Horizontal cycles `1..n-1` followed by vertical cycles `1..n-1`.
pub fn schubert_cycles(n: usize) -> Result<Vec<SchubertCycle>, DiagramError> {
    let mut out = Vec::with_capacity(2 * n);
    for kind in [FacetKind::Horizontal, FacetKind::Vertical] {
        for idx in 1..n.max(1) {
            out.push(SchubertCycle::new(n, kind, idx)?);
        }
    }
    if out.is_empty() {
        return Err(DiagramError::SizeTooSmall(n));
    }
    Ok(out)
}

/// Intersection number of the basic disc through `facet` with `cycle`.
pub fn disc_intersection(facet: Facet, cycle: &SchubertCycle) -> Result<u8, DiagramError> {
    facet.check(cycle.n)?;
    Ok(u8::from(
        facet.kind == cycle.kind && facet.cycle_index() == cycle.index,
    ))
}
