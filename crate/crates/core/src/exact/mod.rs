//! Exact integer and rational algebra: characteristic and minimal
//! polynomials, Newton's identities, Fujiwara's root bound and
//! semisimplicity. Nothing in here rounds.

mod charpoly;
mod matrix;
mod minpoly;
mod newton;
pub mod poly;

pub use charpoly::{char_poly, fujiwara_bound, symmetric_of_inverse, CharPolyData};
pub use matrix::IntegerMatrix;
pub(crate) use matrix::bigint_to_json;
pub use minpoly::{is_semisimple, minimal_polynomial};
pub use newton::{newton_power_traces, newton_symmetric, newton_symmetric_rational, PowerTraces};
pub use poly::QPoly;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("matrix must have at least one row")]
    EmptyMatrix,
    #[error("expected {n}x{n} = {} entries, found {len}", n * n)]
    Shape { n: usize, len: usize },
    #[error("row {row} has the wrong length")]
    Ragged { row: usize },
    #[error("invalid matrix JSON: {0}")]
    Json(String),
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("division by {index} is not exact; trace data is inconsistent with an integral element")]
    NonIntegralResult { index: usize },
    #[error("determinant is {det}, expected 1")]
    NotUnimodular { det: String },
}
