//! Closed-form bounds: trace-length brackets, metric scaling, growth
//! constants, and the `f`-function of a Killing-Cartan type.

mod constants;
mod lie;
mod metric;
mod trace_length;

pub use constants::{
    growth_constant, restriction_c1, special_linear_c1, volume_growth_constant, ConstantsProfile, Family,
    VolumeGrowthConstant,
};
pub use lie::{degree_bound, f_value, f_value_exact, DegreeBound, DegreeCaveat, KcType, MAX_RANK};
pub use metric::{scale_metric, shift_constants, MetricState, ShiftContext};
pub use trace_length::{
    bracket_from_hyp_trace, bracket_from_power_traces, exact_length_n2, hyp_bracket_for, BracketVariant,
    LengthBracket,
};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BoundsError {
    #[error("{0}")]
    Domain(String),
    #[error("|tr(x)| = |{trace}| < 1")]
    TraceTooSmall { trace: String },
    #[error("|tr| = |{trace}| <= 2, element is not hyperbolic")]
    NotHyperbolic { trace: f64 },
    #[error("unsupported family: {0}")]
    UnsupportedFamily(String),
    #[error("invalid type: {0}")]
    InvalidType(String),
}
