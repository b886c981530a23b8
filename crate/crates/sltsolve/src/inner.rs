//! Closed-form solutions of the equations inside the box.

use std::collections::BTreeMap;

use gcdiagram::Cell;
use novikov::{q, sign_pow, Q};
use num_traits::{One, Zero};

use crate::SltError;

/// `1` on the diagonal, `∏_{r<j−i}(2i+2r)` above it and the reciprocal
/// `∏_{r<i−j}(2j+2r)` below it.
pub fn ztilde(i: usize, j: usize) -> Q {
    let prod = |lo: usize, len: usize| -> Q {
        (0..len).fold(Q::one(), |acc, r| acc * q((2 * lo + 2 * r) as i64))
    };
    match i.cmp(&j) {
        std::cmp::Ordering::Equal => Q::one(),
        std::cmp::Ordering::Less => prod(i, j - i),
        std::cmp::Ordering::Greater => prod(j, i - j).recip(),
    }
}

/// The triangle `i + j ≤ m + 1` of the reciprocal-symmetric solution.
pub fn symmetric_inner_base(m: usize) -> BTreeMap<Cell, Q> {
    let mut out = BTreeMap::new();
    for i in 1..=m {
        for j in 1..=m + 1 - i {
            out.insert(Cell::new(i, j), ztilde(i, j));
        }
    }
    out
}

/// A full solution on `B(m)` with `y_{m,m} = c`, built by the reflection
/// `y_{i,j} = (−1)^{i+j−m−1} y_{m+1−j, m+1−i}` across the anti-diagonal of the box.
pub fn symmetric_inner_solution(m: usize, c: &Q) -> Result<BTreeMap<Cell, Q>, SltError> {
    if c.is_zero() {
        return Err(SltError::ZeroScale);
    }
    if m < 2 {
        return Err(SltError::Range(format!(
            "box size m = {m} must be at least 2"
        )));
    }
    let base = symmetric_inner_base(m);
    let mut full = BTreeMap::new();
    for i in 1..=m {
        for j in 1..=m {
            let v = if i + j <= m + 1 {
                base[&Cell::new(i, j)].clone()
            } else {
                sign_pow((i + j) as i64 - m as i64 - 1) * &base[&Cell::new(m + 1 - j, m + 1 - i)]
            };
            full.insert(Cell::new(i, j), v);
        }
    }
    let scale = c / &full[&Cell::new(m, m)];
    Ok(full.into_iter().map(|(k, v)| (k, v * &scale)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use novikov::qf;

    #[test]
    fn base_values() {
        let b = symmetric_inner_base(4);
        assert_eq!(b[&Cell::new(1, 2)], q(2));
        assert_eq!(b[&Cell::new(2, 1)], qf(1, 2));
        assert_eq!(b[&Cell::new(1, 3)], q(8));
        assert_eq!(b[&Cell::new(1, 4)], q(48));
        assert_eq!(b[&Cell::new(2, 3)], q(4));
    }

    #[test]
    fn corner_is_the_scale() {
        let s = symmetric_inner_solution(2, &q(-1)).unwrap();
        assert_eq!(s[&Cell::new(2, 2)], q(-1));
        assert!(symmetric_inner_solution(3, &q(0)).is_err());
    }
}
