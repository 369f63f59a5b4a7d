use num_bigint::BigInt;
use num_traits::Signed;
use serde::Serialize;

use super::BoundsError;
use crate::exact::PowerTraces;
use crate::numeric::{acosh, bigint_ln, bigint_to_f64, round_down, round_up};
use crate::spectral::SpectralData;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum BracketVariant {
    HyperbolicTrace,
    PowerTraces,
}

/// Interval `[lower, upper]` known to contain a translation length.
/// Endpoints are rounded outward.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct LengthBracket {
    pub lower: f64,
    pub upper: f64,
    pub variant: BracketVariant,
}

impl LengthBracket {
    pub fn contains(&self, x: f64, tol: f64) -> bool {
        self.lower - tol <= x && x <= self.upper + tol
    }
}

/// Allowance for hyperbolic traces that come out a hair below `n`.
const HYP_TRACE_SLACK: f64 = 1e-12;

/// `sqrt(2n) arccosh(y^(n-1))` rounded up, without overflowing for huge `y`.
fn upper_from_ratio(ln_y: f64, y: f64, n: usize) -> f64 {
    let e = (n - 1) as f64;
    let z = y.powf(e);
    let a = if y == 1.0 {
        0.0
    } else if z.is_finite() && z < 1e300 {
        acosh(round_up(z * (1.0 + 2.0 * n as f64 * f64::EPSILON)))
    } else {
        // arccosh(z) < ln(2z)
        std::f64::consts::LN_2 + e * ln_y
    };
    round_up((2.0 * n as f64).sqrt() * round_up(a))
}

/// `sqrt(2) arccosh(h/n) <= l(x) <= sqrt(2n) arccosh((h/n)^(n-1))` where `h` is
/// the trace of the hyperbolic part.
pub fn bracket_from_hyp_trace(hyp_trace: f64, n: usize) -> Result<LengthBracket, BoundsError> {
    if n < 2 {
        return Err(BoundsError::Domain(format!("n = {n} must be at least 2")));
    }
    let nf = n as f64;
    if !(hyp_trace >= nf * (1.0 - HYP_TRACE_SLACK)) {
        return Err(BoundsError::Domain(format!(
            "hyperbolic trace {hyp_trace} is below n = {n}"
        )));
    }
    let y = (hyp_trace / nf).max(1.0);
    let lower = round_down(2f64.sqrt() * round_down(acosh((y * (1.0 - 4.0 * f64::EPSILON)).max(1.0))));
    let upper = upper_from_ratio(y.ln(), y, n);
    Ok(LengthBracket { lower, upper, variant: BracketVariant::HyperbolicTrace })
}

/// [`bracket_from_hyp_trace`] widened by the uncertainty of the computed
/// hyperbolic trace.
pub fn hyp_bracket_for(sd: &SpectralData) -> Result<LengthBracket, BoundsError> {
    let err = sd.hyp_trace_error();
    let nf = sd.n as f64;
    let low = bracket_from_hyp_trace((sd.hyp_trace - err).max(nf), sd.n)?;
    let high = bracket_from_hyp_trace(sd.hyp_trace + err, sd.n)?;
    Ok(LengthBracket { lower: low.lower, upper: high.upper, variant: BracketVariant::HyperbolicTrace })
}

/// `sqrt(2) arccosh(max{1, |tr x|/n}) <= l(x) <= sqrt(2n) arccosh((2 sum |tr x^l|)^(n-1))`,
/// valid when `|tr x| >= 1`.
pub fn bracket_from_power_traces(pt: &PowerTraces) -> Result<LengthBracket, BoundsError> {
    let n = pt.degree();
    if n < 2 {
        return Err(BoundsError::Domain(format!("n = {n} must be at least 2")));
    }
    let tr = pt.get(1).abs();
    if tr < BigInt::from(1) {
        return Err(BoundsError::TraceTooSmall { trace: pt.get(1).to_string() });
    }
    let y = (bigint_to_f64(&tr) / n as f64).max(1.0);
    let lower = if y.is_finite() {
        round_down(2f64.sqrt() * round_down(acosh((y * (1.0 - 4.0 * f64::EPSILON)).max(1.0))))
    } else {
        round_down(2f64.sqrt() * (bigint_ln(&tr) - (n as f64).ln()))
    };
    let f: BigInt = pt.abs_sum() * 2;
    let upper = upper_from_ratio(bigint_ln(&f), bigint_to_f64(&f), n);
    Ok(LengthBracket { lower, upper, variant: BracketVariant::PowerTraces })
}

/// `2 arccosh(|tr|/2)`, the exact length of a hyperbolic element of `SL_2(R)`.
pub fn exact_length_n2(tr: f64) -> Result<f64, BoundsError> {
    if !(tr.abs() > 2.0) {
        return Err(BoundsError::NotHyperbolic { trace: tr });
    }
    Ok(2.0 * acosh(tr.abs() / 2.0))
}
