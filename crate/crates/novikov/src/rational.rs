//! Helpers for exact rationals: `p/q` parsing and canonical formatting.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exact rational scalar used everywhere in the workspace.
pub type Q = BigRational;

/// Integer shorthand.
pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// `num/den` shorthand. Panics on a zero denominator.
pub fn qf(num: i64, den: i64) -> Q {
    Q::new(BigInt::from(num), BigInt::from(den))
}

/// Parses `p/q` or a bare integer `p`.
pub fn parse_q(s: &str) -> Option<Q> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().ok()?;
    let den: BigInt = den.parse().ok()?;
    if den.is_zero() {
        return None;
    }
    Some(Q::new(num, den))
}

/// Canonical `num/den` form with the denominator always written.
pub fn fmt_q(x: &Q) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

/// Compact form: integers without `/1`.
pub fn fmt_q_short(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        fmt_q(x)
    }
}

/// Exact square root of a non-negative rational, if it has one.
pub fn sqrt_q(x: &Q) -> Option<Q> {
    if x.is_negative() {
        return None;
    }
    let n = x.numer().sqrt();
    let d = x.denom().sqrt();
    if &(&n * &n) == x.numer() && &(&d * &d) == x.denom() {
        Some(Q::new(n, d))
    } else {
        None
    }
}

/// `(-1)^e` as a rational.
pub fn sign_pow(e: i64) -> Q {
    if e.rem_euclid(2) == 0 {
        Q::one()
    } else {
        -Q::one()
    }
}
