use crate::{Cell, DiagramError, Shape};

/// Seed positions for the diagonal-by-diagonal solver.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeedIndexSet {
    /// `(m,m)`, then `(s,m+1)` for `s = 1..m`, then `(m+1,m+1), (m+1,m+2), …`
    /// up to `(k,k)`, keeping only cells with `i + j ≤ n + 1`.
    pub seeds: Vec<Cell>,
    /// `seeds` without `(m,m)`.
    pub initial: Vec<Cell>,
    /// Members on the anti-diagonal. Their value is fixed to 1 rather than chosen.
    pub pinned: Vec<Cell>,
}

impl SeedIndexSet {
    /// Seeds that are actually free parameters.
    pub fn free(&self) -> Vec<Cell> {
        self.seeds
            .iter()
            .copied()
            .filter(|c| !self.pinned.contains(c))
            .collect()
    }
}

pub fn seed_index_set(n: usize, m: usize) -> Result<SeedIndexSet, DiagramError> {
    let shape = Shape::new(n, m)?;
    let k = shape.k();
    let mut seeds = vec![Cell::new(m, m)];
    seeds.extend((1..=m).map(|s| Cell::new(s, m + 1)));
    for r in m + 1..=k {
        seeds.push(Cell::new(r, r));
        if r < k {
            seeds.push(Cell::new(r, r + 1));
        }
    }
    // Tail cells beyond Γ(n) never enter any equation. The (m,m+1) entry for
    // n = 2m sits on the anti-diagonal and stays, pinned.
    seeds.retain(|c| c.diag() <= n || (c.diag() == n + 1 && c.j == m + 1));
    let initial = seeds[1..].to_vec();
    let pinned = seeds
        .iter()
        .copied()
        .filter(|&c| shape.is_frozen(c))
        .collect();
    Ok(SeedIndexSet {
        seeds,
        initial,
        pinned,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cells(v: &[(usize, usize)]) -> Vec<Cell> {
        v.iter().map(|&(i, j)| Cell::new(i, j)).collect()
    }

    #[test]
    fn fl7_box2() {
        let s = seed_index_set(7, 2).unwrap();
        assert_eq!(s.seeds, cells(&[(2, 2), (1, 3), (2, 3), (3, 3), (3, 4)]));
        assert_eq!(s.initial, cells(&[(1, 3), (2, 3), (3, 3), (3, 4)]));
        assert!(s.pinned.is_empty());
    }

    #[test]
    fn maximal_boxes() {
        let s = seed_index_set(4, 2).unwrap();
        assert_eq!(s.seeds, cells(&[(2, 2), (1, 3), (2, 3)]));
        assert_eq!(s.pinned, cells(&[(2, 3)]));
        let s = seed_index_set(6, 3).unwrap();
        assert_eq!(s.seeds, cells(&[(3, 3), (1, 4), (2, 4), (3, 4)]));
        assert_eq!(s.free(), cells(&[(3, 3), (1, 4), (2, 4)]));
    }

    #[test]
    fn one_seed_per_diagonal_outside() {
        for n in 4..=12 {
            for m in 2..=n / 2 {
                let s = seed_index_set(n, m).unwrap();
                let diags: Vec<usize> = s.free()[1..].iter().map(Cell::diag).collect();
                let expected: Vec<usize> = (m + 2..=n).collect();
                assert_eq!(diags, expected, "n={n} m={m}");
            }
        }
    }

    #[test]
    fn even_tail_ends_at_kk() {
        let s = seed_index_set(8, 2).unwrap();
        assert_eq!(s.seeds.last(), Some(&Cell::new(4, 4)));
        assert!(seed_index_set(7, 4).is_err());
    }
}
