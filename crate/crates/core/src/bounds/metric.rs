use serde::Serialize;

/// Systole, volume and dimension of a Riemannian manifold.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct MetricState {
    pub sys: f64,
    pub vol: f64,
    pub dim: u32,
}

/// Effect of `g -> alpha g`: lengths scale by `sqrt(alpha)`, volumes by
/// `alpha^(dim/2)`.
pub fn scale_metric(s: MetricState, alpha: f64) -> MetricState {
    MetricState {
        sys: alpha.sqrt() * s.sys,
        vol: alpha.powf(s.dim as f64 / 2.0) * s.vol,
        dim: s.dim,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub enum ShiftContext {
    /// Metric rescaled by `alpha` on a manifold of dimension `dim`.
    Scale { alpha: f64, dim: u32 },
    /// Passing to a cover with `sheets` sheets.
    Cover { sheets: f64 },
    /// Volume measured with a different normalization, `vol' = beta vol`.
    Measure { beta: f64 },
}

/// Transforms the constants of a bound `sys >= c1 log(vol) - c2` under a
/// change of metric, base or volume normalization.
pub fn shift_constants(c1: f64, c2: f64, context: ShiftContext) -> (f64, f64) {
    match context {
        ShiftContext::Scale { alpha, dim } => {
            let r = alpha.sqrt();
            (r * c1, r * (c2 + c1 * dim as f64 / 2.0 * alpha.ln()))
        }
        ShiftContext::Cover { sheets } => (c1, c2 + c1 * sheets.ln()),
        ShiftContext::Measure { beta } => (c1, c2 - c1 * beta.ln()),
    }
}
