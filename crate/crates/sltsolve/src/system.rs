//! The split leading term system as explicit term lists, and its exact checker.

use std::collections::BTreeMap;
use std::fmt;

use gcdiagram::{Cell, FacetKind, Shape};
use novikov::{fmt_q, sign_pow, Q};
use num_traits::{One, Zero};

use crate::SltError;

/// `sign · c · num / den`, either side of the ratio possibly the constant 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SltTerm {
    pub sign: i8,
    /// Bulk factor `c^hor_{i,i+1}` or `c^ver_{j+1,j}`; `None` for the link equations.
    pub bulk: Option<(FacetKind, usize)>,
    pub num: Option<Cell>,
    pub den: Option<Cell>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum EquationLabel {
    /// Equation of `(i,j) ∈ B(m)`, terms leaving the box dropped.
    Inside(Cell),
    /// Equation of `(i,j) ∉ B(m)` or of the corner `(m,m)`, terms through
    /// `B(m) \ {(m,m)}` dropped.
    Outside(Cell),
    /// Link `l` between column `m+1` and row `m+1`.
    Link(usize),
}

impl fmt::Display for EquationLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EquationLabel::Inside(c) => write!(f, "inside{c}"),
            EquationLabel::Outside(c) => write!(f, "outside{c}"),
            EquationLabel::Link(l) => write!(f, "link({l})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SltEquation {
    pub label: EquationLabel,
    pub terms: Vec<SltTerm>,
}

impl fmt::Display for SltEquation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let y = |c: Option<Cell>| c.map(|c| format!("y_{{{},{}}}", c.i, c.j));
        for (idx, t) in self.terms.iter().enumerate() {
            let sign = match (idx, t.sign < 0) {
                (0, false) => "",
                (0, true) => "-",
                (_, false) => " + ",
                (_, true) => " - ",
            };
            let bulk = match t.bulk {
                Some((FacetKind::Horizontal, i)) => format!("c^hor_{{{},{}}}*", i, i + 1),
                Some((FacetKind::Vertical, j)) => format!("c^ver_{{{},{}}}*", j + 1, j),
                None => String::new(),
            };
            let ratio = match (y(t.num), y(t.den)) {
                (Some(a), Some(b)) => format!("{a}/{b}"),
                (Some(a), None) => a,
                (None, Some(b)) => format!("1/{b}"),
                (None, None) => "1".to_string(),
            };
            write!(f, "{sign}{bulk}{ratio}")?;
        }
        if self.terms.is_empty() {
            write!(f, "0")?;
        }
        write!(f, " = 0")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SltSystem {
    pub shape: Shape,
    pub equations: Vec<SltEquation>,
}

/// What a referenced index stands for in one equation.
enum Slot {
    Var(Cell),
    One,
    /// The term carrying this index is dropped.
    Drop,
}

/// The four-term logarithmic derivative at `(i,j)`, with `slot` resolving each
/// referenced index. Index-0 terms always vanish.
fn four_term(i: usize, j: usize, slot: impl Fn(usize, usize) -> Slot) -> Vec<SltTerm> {
    use FacetKind::{Horizontal, Vertical};
    let raw = [
        (-1, (Vertical, j), (i, j + 1), (i, j)),
        (-1, (Horizontal, i - 1), (i - 1, j), (i, j)),
        (1, (Horizontal, i), (i, j), (i + 1, j)),
        (1, (Vertical, j - 1), (i, j), (i, j - 1)),
    ];
    let mut out = Vec::new();
    for (sign, bulk, (a, b), (c, d)) in raw {
        if a == 0 || d == 0 {
            continue;
        }
        let resolve = |x, y| match slot(x, y) {
            Slot::Var(cell) => Some(Some(cell)),
            Slot::One => Some(None),
            Slot::Drop => None,
        };
        let (Some(num), Some(den)) = (resolve(a, b), resolve(c, d)) else {
            continue;
        };
        out.push(SltTerm {
            sign,
            bulk: Some(bulk),
            num,
            den,
        });
    }
    out
}

pub fn build_slt(n: usize, m: usize) -> Result<SltSystem, SltError> {
    let shape = Shape::new(n, m).map_err(|e| SltError::Range(e.to_string()))?;
    let mut equations = Vec::new();
    let in_box = |a: usize, b: usize| a >= 1 && b >= 1 && a <= m && b <= m;
    for c in shape.box_cells() {
        let terms = four_term(c.i, c.j, |a, b| {
            if in_box(a, b) {
                Slot::Var(Cell::new(a, b))
            } else {
                Slot::Drop
            }
        });
        equations.push(SltEquation {
            label: EquationLabel::Inside(c),
            terms,
        });
    }
    for c in shape.outside_cells() {
        let terms = four_term(c.i, c.j, |a, b| {
            if a + b == n + 1 {
                Slot::One
            } else if in_box(a, b) && (a, b) != (m, m) {
                Slot::Drop
            } else {
                Slot::Var(Cell::new(a, b))
            }
        });
        equations.push(SltEquation {
            label: EquationLabel::Outside(c),
            terms,
        });
    }
    let var = |c: Cell| (c.diag() <= n).then_some(c);
    for l in 1..=m {
        let sign = if sign_pow((m + 1 - l) as i64).is_one() {
            1
        } else {
            -1
        };
        equations.push(SltEquation {
            label: EquationLabel::Link(l),
            terms: vec![
                SltTerm {
                    sign,
                    bulk: None,
                    num: var(Cell::new(l, m + 1)),
                    den: Some(Cell::new(m, m)),
                },
                SltTerm {
                    sign: 1,
                    bulk: None,
                    num: Some(Cell::new(m, m)),
                    den: var(Cell::new(m + 1, l)),
                },
            ],
        });
    }
    Ok(SltSystem { shape, equations })
}

/// Nonzero residuals and missing or zero components found by [`verify_slt`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SltReport {
    pub residuals: Vec<(EquationLabel, Q)>,
    pub zero_components: Vec<String>,
    pub missing: Vec<String>,
    pub equations_checked: usize,
}

impl SltReport {
    pub fn all_zero(&self) -> bool {
        self.residuals.is_empty() && self.zero_components.is_empty() && self.missing.is_empty()
    }
}

impl fmt::Display for SltReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.all_zero() {
            return write!(f, "all {} equations vanish exactly", self.equations_checked);
        }
        for (label, r) in &self.residuals {
            writeln!(f, "{label}: residual {}", fmt_q(r))?;
        }
        for z in &self.zero_components {
            writeln!(f, "zero component {z}")?;
        }
        for z in &self.missing {
            writeln!(f, "missing value {z}")?;
        }
        Ok(())
    }
}

/// Values to substitute: `inner` on `B(m)`, `outer` on the rest of `Γ(n)` and
/// `(m,m)`, bulk leading values (missing indices are 1).
pub struct SltValues<'a> {
    pub inner: &'a BTreeMap<Cell, Q>,
    pub outer: &'a BTreeMap<Cell, Q>,
    pub c_hor: &'a BTreeMap<usize, Q>,
    pub c_ver: &'a BTreeMap<usize, Q>,
}

/// Evaluates every equation exactly over the rationals.
pub fn verify_slt(system: &SltSystem, values: &SltValues) -> SltReport {
    let mut report = SltReport::default();
    let one = Q::one();
    for (name, map) in [("inner", values.inner), ("outer", values.outer)] {
        for (c, v) in map {
            if v.is_zero() {
                report.zero_components.push(format!("{name} y{c}"));
            }
        }
    }
    for (name, map) in [("c_hor", values.c_hor), ("c_ver", values.c_ver)] {
        for (i, v) in map {
            if v.is_zero() {
                report.zero_components.push(format!("{name}[{i}]"));
            }
        }
    }
    for eq in &system.equations {
        report.equations_checked += 1;
        let table = match eq.label {
            EquationLabel::Inside(_) => values.inner,
            _ => values.outer,
        };
        let mut total = Q::zero();
        let mut ok = true;
        for t in &eq.terms {
            let look = |c: Option<Cell>| -> Option<&Q> {
                match c {
                    None => Some(&one),
                    Some(c) => table.get(&c),
                }
            };
            let (Some(a), Some(b)) = (look(t.num), look(t.den)) else {
                report.missing.push(format!("{} in {}", eq, eq.label));
                ok = false;
                break;
            };
            if b.is_zero() {
                report
                    .zero_components
                    .push(format!("denominator in {}", eq.label));
                ok = false;
                break;
            }
            let bulk = match t.bulk {
                Some((FacetKind::Horizontal, i)) => values.c_hor.get(&i).unwrap_or(&one),
                Some((FacetKind::Vertical, j)) => values.c_ver.get(&j).unwrap_or(&one),
                None => &one,
            };
            let v = bulk * a / b;
            if t.sign < 0 {
                total -= v;
            } else {
                total += v;
            }
        }
        if ok && !total.is_zero() {
            report.residuals.push((eq.label, total));
        }
    }
    report
}
