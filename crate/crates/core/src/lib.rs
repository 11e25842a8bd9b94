//! Exact Riordan-array arithmetic over rationals and rational polynomials:
//! truncated power series, the Riordan group, production matrices,
//! J-fractions, Hankel transforms and a catalogue of involutions.

pub mod almost;
pub mod coeff;
pub mod error;
pub mod families;
pub mod jfrac;
pub mod matrix;
pub mod poly;
pub mod riordan;
pub mod series;
pub mod transforms;

pub use coeff::{binomial, rat, ratio, Coeff, Rational};
pub use error::{Error, Result};
pub use jfrac::{series_to_jfraction, JFraction};
pub use matrix::{DenseMatrix, LowerTriMatrix, ProductionMatrix};
pub use poly::Poly;
pub use riordan::{InvolutionReport, RiordanPair};
pub use series::{solve_gk, Series, DEFAULT_ORDER};

/// A sequence as a JSON array of exact-value strings.
pub fn seq_to_json<C: std::fmt::Display>(terms: &[C]) -> serde_json::Value {
    serde_json::Value::Array(terms.iter().map(|t| serde_json::Value::String(t.to_string())).collect())
}
