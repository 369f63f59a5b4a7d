//! Brute-force enumeration of congruence-subgroup elements of bounded
//! height: the oracle that the trace and length theorems are checked against.

mod output;
mod search;

pub use output::{write_csv, CSV_HEADER};
pub use search::{enumerate, enumerate_quat, enumerate_sl, partitioned_run};

use num_bigint::BigInt;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::exact::bigint_to_json;
use crate::lattice::{CongruenceSpec, LatticeElement, LatticeError};
use crate::spectral::{SpectralError, DEFAULT_BITS};

/// Default ceiling on the number of candidate entry vectors.
pub const DEFAULT_BUDGET: u128 = 10_000_000_000;

#[derive(Clone, Debug, PartialEq)]
pub struct EnumerationTask {
    pub spec: CongruenceSpec,
    /// Bound on the absolute value of every entry or coefficient.
    pub height: u64,
    pub semisimple_only: bool,
    pub exclude_identity: bool,
    pub budget: u128,
    pub bits: u32,
}

impl EnumerationTask {
    pub fn new(spec: CongruenceSpec, height: u64) -> Self {
        Self {
            spec,
            height,
            semisimple_only: false,
            exclude_identity: false,
            budget: DEFAULT_BUDGET,
            bits: DEFAULT_BITS,
        }
    }

    pub fn semisimple_only(mut self, yes: bool) -> Self {
        self.semisimple_only = yes;
        self
    }

    pub fn exclude_identity(mut self, yes: bool) -> Self {
        self.exclude_identity = yes;
        self
    }

    pub fn budget(mut self, budget: u128) -> Self {
        self.budget = budget;
        self
    }

    pub fn bits(mut self, bits: u32) -> Self {
        self.bits = bits;
        self
    }
}

fn ser_int<S: Serializer>(x: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    bigint_to_json(x).serialize(s)
}

fn ser_ints<S: Serializer>(xs: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
    xs.iter().map(bigint_to_json).collect::<Vec<_>>().serialize(s)
}

fn ser_opt_int<S: Serializer>(x: &Option<BigInt>, s: S) -> Result<S::Ok, S::Error> {
    x.as_ref().map(bigint_to_json).serialize(s)
}

/// One kept element.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Record {
    #[serde(serialize_with = "ser_ints")]
    pub entries: Vec<BigInt>,
    #[serde(serialize_with = "ser_int")]
    pub trace: BigInt,
    pub is_semisimple: bool,
    pub is_identity: bool,
    /// Translation length; absent for non-semisimple elements.
    pub length: Option<f64>,
    pub length_error: Option<f64>,
    /// True when the exact classification gives positive length.
    pub positive_length: bool,
    pub witness_q: Option<i64>,
    pub passes_cor52: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EnumerationMetadata {
    /// `(2H + 1)^k` for `k` entries.
    #[serde(serialize_with = "ser_int")]
    pub search_space: BigInt,
    /// Entry vectors that are congruent to the identity: the budgeted quantity.
    pub candidates: u128,
    /// `(p, m)` when the trace theorem applies to the level.
    pub tower: Option<(u64, u32)>,
    /// Why the trace theorem checks were skipped, if they were.
    pub excluded_reason: Option<String>,
    /// Length lower bound every semisimple non-identity element must meet.
    pub length_bound: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EnumerationResult {
    /// Elements of the congruence subgroup within the height bound.
    pub count_total: u64,
    pub count_semisimple: u64,
    /// Smallest positive length among kept elements (empirical).
    pub min_length: Option<f64>,
    #[serde(skip)]
    pub min_length_witness: Option<LatticeElement>,
    /// Smallest `|trace|` among kept semisimple non-identity elements.
    #[serde(serialize_with = "ser_opt_int")]
    pub min_abs_trace: Option<BigInt>,
    /// Semisimple non-identity elements with no witness power.
    pub witness_failures: u64,
    /// Elements shorter than the length lower bound.
    pub cor52_failures: u64,
    pub records: Vec<Record>,
    pub metadata: EnumerationMetadata,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EnumerateError {
    #[error("search needs {estimate} candidates, above the budget of {budget}")]
    BudgetExceeded { estimate: u128, budget: u128 },
    #[error("invalid task: {0}")]
    InvalidTask(String),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Spectral(#[from] SpectralError),
}
