//! Principal congruence subgroups of `SL_n(Z)` and of unit groups of
//! quaternion orders: membership, trace congruences and witnesses, systole
//! lower bounds along congruence towers, and the matrix embeddings.

mod congruence;
mod element;
mod quaternion;
mod systole;

pub use congruence::{check_tower_prime, in_congruence, is_prime, trace_congruence, witness_q};
pub use element::{Ambient, CongruenceSpec, LatticeElement};
pub use quaternion::{
    parse_rational, quadratic_field_embedding, quat_is_semisimple, quat_mult, quat_trd_nrd, rational_embedding,
    split_embedding, QuatElement, QuaternionAlgebra,
};
pub use systole::{congruence_length_lb, growth_table, index_bound, sys_lower_bound, GrowthRow};

use thiserror::Error;

use crate::spectral::SpectralError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("not a unit: {0}")]
    NotUnit(String),
    #[error("element is not in the congruence subgroup of level {level}")]
    NotInSubgroup { level: String },
    #[error("prime {p} divides 2ab for {algebra}; excluded from towers")]
    RamifiedPrime { p: u64, algebra: String },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("prime {p} must exceed 2n = {}", 2 * n)]
    PrimeTooSmall { p: u64, n: usize },
    #[error("identity element has no witness")]
    IdentityElement,
    #[error("element is not semisimple")]
    NotSemisimple,
    #[error("no witness power found for {element}")]
    NoWitness { element: String },
    #[error("level {level} must exceed 2n = {}", 2 * n)]
    LevelTooSmall { level: String, n: usize },
    #[error("algebra {0} is not split over R")]
    NotSplit(String),
    #[error(transparent)]
    Spectral(#[from] SpectralError),
}
