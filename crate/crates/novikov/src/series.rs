//! Truncated formal series `Σ a_e T^e` with rational exponents and a precision cap.
//!
//! A series stores the terms with exponent below its cap; everything at or above
//! the cap is unknown. Arithmetic propagates caps so that a result never claims
//! more precision than its inputs support.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_traits::{One, Signed, Zero};

use crate::rational::{fmt_q, parse_q, sqrt_q, Q};
use crate::NovikovError;

/// Valuation of a series: the least exponent, or a tag for the zero element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Valuation {
    Zero,
    Finite(Q),
}

impl Valuation {
    pub fn finite(&self) -> Option<&Q> {
        match self {
            Valuation::Zero => None,
            Valuation::Finite(v) => Some(v),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Series {
    terms: BTreeMap<Q, Q>,
    cap: Q,
}

impl Series {
    /// Builds a series from `(exponent, coefficient)` pairs, merging duplicates
    /// and dropping zero coefficients and exponents at or above `cap`.
    pub fn from_terms<I: IntoIterator<Item = (Q, Q)>>(terms: I, cap: Q) -> Self {
        let mut map: BTreeMap<Q, Q> = BTreeMap::new();
        for (e, c) in terms {
            if e >= cap {
                continue;
            }
            *map.entry(e).or_insert_with(Q::zero) += c;
        }
        map.retain(|_, c| !c.is_zero());
        Series { terms: map, cap }
    }

    pub fn zero(cap: Q) -> Self {
        Series {
            terms: BTreeMap::new(),
            cap,
        }
    }

    pub fn constant(c: Q, cap: Q) -> Self {
        Self::monomial(c, Q::zero(), cap)
    }

    pub fn one(cap: Q) -> Self {
        Self::constant(Q::one(), cap)
    }

    /// `c T^e`, truncated at `cap`.
    pub fn monomial(c: Q, e: Q, cap: Q) -> Self {
        Self::from_terms([(e, c)], cap)
    }

    pub fn cap(&self) -> &Q {
        &self.cap
    }

    pub fn terms(&self) -> &BTreeMap<Q, Q> {
        &self.terms
    }

    pub fn coeff(&self, e: &Q) -> Q {
        self.terms.get(e).cloned().unwrap_or_else(Q::zero)
    }

    pub fn constant_term(&self) -> Q {
        self.coeff(&Q::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn valuation(&self) -> Valuation {
        match self.terms.keys().next() {
            Some(e) => Valuation::Finite(e.clone()),
            None => Valuation::Zero,
        }
    }

    /// Leading `(exponent, coefficient)`, if any.
    pub fn leading(&self) -> Option<(&Q, &Q)> {
        self.terms.iter().next()
    }

    /// Least exponent, or the cap when no term is known.
    fn vlow(&self) -> Q {
        self.terms
            .keys()
            .next()
            .cloned()
            .unwrap_or_else(|| self.cap.clone())
    }

    /// Valuation exactly 0.
    pub fn is_unit(&self) -> bool {
        matches!(self.valuation(), Valuation::Finite(v) if v.is_zero())
    }

    /// Drops terms at or above `order` and lowers the cap to it.
    pub fn truncate(&self, order: &Q) -> Self {
        let cap = if order < &self.cap {
            order.clone()
        } else {
            self.cap.clone()
        };
        Series {
            terms: self
                .terms
                .range(..cap.clone())
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
            cap,
        }
    }

    /// Compares all terms with exponent below `order`.
    pub fn equals_mod(&self, other: &Series, order: &Q) -> bool {
        let a = self.terms.range(..order.clone());
        let b = other.terms.range(..order.clone());
        a.eq(b)
    }

    /// True when every term below `order` vanishes.
    pub fn is_zero_mod(&self, order: &Q) -> bool {
        self.terms.range(..order.clone()).next().is_none()
    }

    /// Multiplication by `T^e`; the cap moves with the exponents.
    pub fn shift(&self, e: &Q) -> Self {
        Series {
            terms: self.terms.iter().map(|(x, c)| (x + e, c.clone())).collect(),
            cap: &self.cap + e,
        }
    }

    pub fn scale(&self, k: &Q) -> Self {
        if k.is_zero() {
            return Series::zero(self.cap.clone());
        }
        Series {
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c * k)).collect(),
            cap: self.cap.clone(),
        }
    }

    /// Multiplicative inverse of a unit, exact modulo the cap.
    pub fn invert_unit(&self) -> Result<Series, NovikovError> {
        if !self.is_unit() {
            return Err(NovikovError::NotUnit(self.to_string()));
        }
        let a0 = self.constant_term();
        let mut r = Series::constant(a0.recip(), self.cap.clone());
        let two = Series::constant(Q::from_integer(2.into()), self.cap.clone());
        for _ in 0..self.newton_rounds() {
            let next = &r * &(&two - &(self * &r));
            if next == r {
                break;
            }
            r = next;
        }
        Ok(r)
    }

    /// Square root of a unit whose leading coefficient is a rational square.
    /// `leading_sign` picks the branch by the sign of the constant term.
    pub fn sqrt_unit(&self, leading_sign: i8) -> Result<Series, NovikovError> {
        if !self.is_unit() {
            return Err(NovikovError::NotUnit(self.to_string()));
        }
        let a0 = self.constant_term();
        let root = sqrt_q(&a0).ok_or_else(|| NovikovError::NotSquare(fmt_q(&a0)))?;
        let root = if leading_sign < 0 { -root } else { root };
        // Newton on the inverse root s ≈ x^{-1/2}: s ← s(3 − x s²)/2, then √x = x s.
        let mut s = Series::constant(root.recip(), self.cap.clone());
        let three = Series::constant(Q::from_integer(3.into()), self.cap.clone());
        let half = Q::new(1.into(), 2.into());
        for _ in 0..self.newton_rounds() {
            let next = (&s * &(&three - &(self * &(&s * &s)))).scale(&half);
            if next == s {
                break;
            }
            s = next;
        }
        Ok(self * &s)
    }

    /// Enough Newton steps to double past the cap from the smallest positive exponent.
    fn newton_rounds(&self) -> usize {
        let step = self
            .terms
            .keys()
            .find(|e| e.is_positive())
            .cloned()
            .unwrap_or_else(Q::one);
        let mut reach = step;
        let mut rounds = 2;
        while reach < self.cap {
            reach = &reach * Q::from_integer(2.into());
            rounds += 1;
        }
        rounds
    }

    /// Integer power, `k ≥ 0`.
    pub fn pow(&self, k: u32) -> Series {
        let mut out = Series::one(self.cap.clone());
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    /// Replaces the cap, dropping terms above it. Raising the cap only makes sense
    /// for values known exactly.
    pub fn with_cap(&self, cap: Q) -> Series {
        Series::from_terms(self.terms.clone(), cap)
    }
}

impl Add for &Series {
    type Output = Series;
    fn add(self, rhs: &Series) -> Series {
        let cap = if self.cap < rhs.cap {
            self.cap.clone()
        } else {
            rhs.cap.clone()
        };
        Series::from_terms(
            self.terms
                .iter()
                .chain(rhs.terms.iter())
                .map(|(e, c)| (e.clone(), c.clone())),
            cap,
        )
    }
}

impl Sub for &Series {
    type Output = Series;
    fn sub(self, rhs: &Series) -> Series {
        self + &(-rhs)
    }
}

impl Neg for &Series {
    type Output = Series;
    fn neg(self) -> Series {
        Series {
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
            cap: self.cap.clone(),
        }
    }
}

impl Mul for &Series {
    type Output = Series;
    fn mul(self, rhs: &Series) -> Series {
        let c1 = &self.cap + rhs.vlow();
        let c2 = &rhs.cap + self.vlow();
        let cap = if c1 < c2 { c1 } else { c2 };
        let mut out: BTreeMap<Q, Q> = BTreeMap::new();
        for (e1, a) in &self.terms {
            if e1 + rhs.vlow() >= cap {
                break;
            }
            for (e2, b) in &rhs.terms {
                let e = e1 + e2;
                if e >= cap {
                    break;
                }
                *out.entry(e).or_insert_with(Q::zero) += a * b;
            }
        }
        out.retain(|_, c| !c.is_zero());
        Series { terms: out, cap }
    }
}

macro_rules! owned_ops {
    ($tr:ident, $f:ident) => {
        impl $tr for Series {
            type Output = Series;
            fn $f(self, rhs: Series) -> Series {
                (&self).$f(&rhs)
            }
        }
        impl $tr<&Series> for Series {
            type Output = Series;
            fn $f(self, rhs: &Series) -> Series {
                (&self).$f(rhs)
            }
        }
    };
}
owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);

impl Neg for Series {
    type Output = Series;
    fn neg(self) -> Series {
        -&self
    }
}

/// Canonical text form: `c0*T^(p0/q0) + c1*T^(p1/q1) + ... (mod T^(P/Q))`.
impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            write!(f, "0")?;
        } else {
            let parts: Vec<String> = self
                .terms
                .iter()
                .map(|(e, c)| format!("{}*T^({})", fmt_q(c), fmt_q(e)))
                .collect();
            write!(f, "{}", parts.join(" + "))?;
        }
        write!(f, " (mod T^({}))", fmt_q(&self.cap))
    }
}

impl FromStr for Series {
    type Err = NovikovError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || NovikovError::Parse(s.to_string());
        let (body, tail) = s.rsplit_once(" (mod T^(").ok_or_else(bad)?;
        let cap = parse_q(tail.strip_suffix("))").ok_or_else(bad)?).ok_or_else(bad)?;
        let body = body.trim();
        let mut terms = Vec::new();
        if body != "0" {
            for part in body.split(" + ") {
                let (c, e) = part.split_once("*T^(").ok_or_else(bad)?;
                let e = e.strip_suffix(')').ok_or_else(bad)?;
                let c = parse_q(c).ok_or_else(bad)?;
                let e = parse_q(e).ok_or_else(bad)?;
                if c.is_zero() {
                    return Err(bad());
                }
                terms.push((e, c));
            }
        }
        let n = terms.len();
        let out = Series::from_terms(terms, cap);
        if out.terms.len() != n {
            return Err(bad());
        }
        Ok(out)
    }
}
