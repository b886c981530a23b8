//! Exact search for generic seeds.

use std::collections::BTreeMap;

use gcdiagram::{seed_index_set, Cell, Shape};
use novikov::{q, qf, sign_pow, Q};
use num_traits::One;

use crate::generate::{generate, is_generic};
use crate::inner::ztilde;
use crate::propagate::Mode;
use crate::solution::Seed;
use crate::zworld::GenFailure;
use crate::SltError;

pub const DEFAULT_BUDGET: usize = 100_000;

/// Denominators of the perturbations `±1 ∓ 1/q`.
fn perturbation_denominators() -> impl Iterator<Item = i64> {
    (1..=8).map(|e| 10i64.pow(e))
}

/// `σ` itself (when `exact`) followed by `σ(1 − 1/q)` for each perturbation.
fn near(sigma: &Q, exact: bool) -> Vec<Q> {
    let mut out = Vec::new();
    if exact {
        out.push(sigma.clone());
    }
    out.extend(perturbation_denominators().map(|d| sigma * (q(1) - qf(1, d))));
    out
}

fn general() -> Vec<Q> {
    let mut out = vec![q(1), q(-1)];
    for d in perturbation_denominators() {
        out.push(q(1) - qf(1, d));
        out.push(qf(1, d) - q(1));
    }
    out
}

/// `∏_{r=0}^{m−2}(2+2r)`.
fn closed_form_scale(m: usize) -> Q {
    (0..m.saturating_sub(1)).fold(Q::one(), |acc, r| acc * q(2 + 2 * r as i64))
}

/// Candidate values per seed position, in trial order.
pub fn candidates(n: usize, m: usize) -> Result<Vec<(Cell, Vec<Q>)>, SltError> {
    let shape = Shape::new(n, m).map_err(|e| SltError::Range(e.to_string()))?;
    let k = shape.k();
    let idx = seed_index_set(n, m).map_err(|e| SltError::Range(e.to_string()))?;
    let target = |i: usize| sign_pow(k as i64 - i as i64);
    let mut out = Vec::new();
    for &c in &idx.seeds {
        let vals = if idx.pinned.contains(&c) {
            vec![q(1)]
        } else if n % 2 == 1 {
            if c.i == c.j {
                near(&target(c.i), c.i + 1 != k)
            } else {
                general()
            }
        } else if c == Cell::new(m, m) {
            let mut v = near(&q(1), true);
            v.extend(near(&q(-1), true));
            v
        } else if c.j == m + 1 && c.i < m {
            let a = target(m) * closed_form_scale(m);
            let mut v = vec![a * ztilde(c.i, 1)];
            v.extend(general());
            v
        } else if c.j == c.i + 1 {
            near(&target(c.i), c.i + 1 != k)
        } else {
            general()
        };
        out.push((c, vals));
    }
    Ok(out)
}

/// Outcome of a successful search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchOutcome {
    pub seed: Seed,
    /// Number of search nodes visited.
    pub nodes: usize,
    /// The parameter `a` for `n = 2m`, where the seed is `a` times the closed form.
    pub scale: Option<Q>,
}

/// Finds a seed whose full chain, top equations included, has no zeros or poles.
pub fn find_generic_seed(n: usize, m: usize) -> Result<SearchOutcome, SltError> {
    find_generic_seed_with_budget(n, m, DEFAULT_BUDGET)
}

pub fn find_generic_seed_with_budget(
    n: usize,
    m: usize,
    budget: usize,
) -> Result<SearchOutcome, SltError> {
    let shape = Shape::new(n, m).map_err(|e| SltError::Range(e.to_string()))?;
    if n.is_multiple_of(2) && m == shape.k() {
        return scan_maximal(shape, budget);
    }
    let cands = candidates(n, m)?;
    // (m,m) first, then the remaining positions by diagonal
    let mut order: Vec<(Cell, Vec<Q>)> = cands;
    let head = order.remove(0);
    order.sort_by_key(|(c, _)| c.diag());
    order.insert(0, head);
    let mut search = Dfs {
        shape,
        order,
        budget,
        nodes: 0,
        last_failure: None,
    };
    let mut current = BTreeMap::new();
    match search.descend(0, &mut current)? {
        Some(values) => Ok(SearchOutcome {
            seed: Seed::new(n, m, values)?,
            nodes: search.nodes,
            scale: None,
        }),
        None => Err(SltError::SearchExhausted {
            n,
            m,
            nodes: search.nodes,
            last_failure: search.last_failure,
        }),
    }
}

struct Dfs {
    shape: Shape,
    order: Vec<(Cell, Vec<Q>)>,
    budget: usize,
    nodes: usize,
    last_failure: Option<GenFailure>,
}

impl Dfs {
    fn descend(
        &mut self,
        idx: usize,
        current: &mut BTreeMap<Cell, Q>,
    ) -> Result<Option<BTreeMap<Cell, Q>>, SltError> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(SltError::BudgetExhausted {
                n: self.shape.n,
                m: self.shape.m,
                budget: self.budget,
                last_failure: self.last_failure.clone(),
            });
        }
        if idx == self.order.len() {
            return match is_generic(self.shape, current) {
                Ok(()) => Ok(Some(current.clone())),
                Err(f) => {
                    self.last_failure = Some(f);
                    Ok(None)
                }
            };
        }
        let (cell, values) = self.order[idx].clone();
        // everything not needing the next free position can be generated now
        let upto = self
            .order
            .get(idx + 1)
            .map_or(self.shape.n, |(c, _)| c.diag().saturating_sub(1));
        for v in values {
            current.insert(cell, v);
            match generate(self.shape, current, Some(upto), Mode::Recurrence) {
                Ok(_) => {
                    if let Some(found) = self.descend(idx + 1, current)? {
                        return Ok(Some(found));
                    }
                }
                Err(f) => self.last_failure = Some(f),
            }
            current.remove(&cell);
        }
        Ok(None)
    }
}

/// For `n = 2m`: scan `a ∈ {1, …, 100} ∪ {1 + 1/q}` with `d_{s,m+1} = a z̃_{s,1}`.
fn scan_maximal(shape: Shape, budget: usize) -> Result<SearchOutcome, SltError> {
    let m = shape.m;
    let idx = seed_index_set(shape.n, m).map_err(|e| SltError::Range(e.to_string()))?;
    let scales = (1..=100)
        .map(q)
        .chain(perturbation_denominators().map(|d| q(1) + qf(1, d)));
    let mut last_failure = None;
    let mut tried = 0;
    for (nodes, a) in scales.enumerate() {
        tried = nodes + 1;
        if nodes >= budget {
            return Err(SltError::BudgetExhausted {
                n: shape.n,
                m,
                budget,
                last_failure,
            });
        }
        let values: BTreeMap<Cell, Q> = idx
            .seeds
            .iter()
            .map(|&c| {
                let v = if c.j == m + 1 && c.i < m {
                    &a * ztilde(c.i, 1)
                } else {
                    q(1)
                };
                (c, v)
            })
            .collect();
        match is_generic(shape, &values) {
            Ok(()) => {
                return Ok(SearchOutcome {
                    seed: Seed::new(shape.n, m, values)?,
                    nodes: nodes + 1,
                    scale: Some(a),
                })
            }
            Err(f) => last_failure = Some(f),
        }
    }
    Err(SltError::SearchExhausted {
        n: shape.n,
        m,
        nodes: tried,
        last_failure,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Signed;

    #[test]
    fn fl5_corner_is_perturbed_minus_one() {
        let out = find_generic_seed(5, 2).unwrap();
        let d = out.seed.d_mm().clone();
        assert!(d != q(-1));
        assert!((d + q(1)).abs() <= qf(1, 10));
    }

    #[test]
    fn odd_candidates_avoid_exact_sign_next_to_k() {
        let c = candidates(7, 2).unwrap();
        let (cell, vals) = &c[3];
        assert_eq!(*cell, Cell::new(3, 3));
        assert!(!vals.contains(&q(-1)));
    }
}
