//! Exact arithmetic on truncated Novikov series.
//!
//! Elements are finite sums `Σ a_e T^e` with rational exponents and rational
//! coefficients, known modulo `T^cap`. Units (valuation 0) can be inverted and,
//! when the leading coefficient is a rational square, square-rooted.

mod json;
pub mod rational;
mod series;

pub use json::{int_from_json, int_to_json, q_from_json, q_to_json};
pub use rational::{fmt_q, fmt_q_short, parse_q, q, qf, sign_pow, sqrt_q, Q};
pub use series::{Series, Valuation};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum NovikovError {
    #[error("not a unit: {0}")]
    NotUnit(String),
    #[error("leading coefficient {0} is not a rational square")]
    NotSquare(String),
    #[error("cannot parse series: {0}")]
    Parse(String),
}
