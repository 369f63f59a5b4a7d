use std::f64::consts::SQRT_2;

use serde::Serialize;

use super::lie::{degree_bound, f_value_exact, DegreeBound, KcType};
use super::BoundsError;

/// Families of locally symmetric spaces with an explicit growth constant.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Family {
    /// `SL_n(Z) \ SL_n(R) / SO(n)` with the geometric metric.
    SpecialLinear { n: u32 },
    /// Standard arithmetic real hyperbolic `n`-orbifolds, hyperbolic metric.
    RealHyperbolic { n: u32 },
    /// Standard arithmetic complex hyperbolic `n`-orbifolds.
    ComplexHyperbolic { n: u32 },
    /// Standard arithmetic quaternionic hyperbolic `n`-orbifolds.
    QuaternionicHyperbolic { n: u32 },
    /// Any arithmetic quotient with group of type `kc` over a field of the
    /// given degree, with the subspace metric.
    Restriction { kc: KcType, degree: u32 },
    /// Real hyperbolic `n`-orbifolds (`n >= 4`) over a field of degree `degree`.
    RealHyperbolicOverField { n: u32, degree: u32 },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConstantsProfile {
    pub family: Family,
    pub kc_type: Option<KcType>,
    pub rank: Option<u32>,
    pub exponents: Vec<u32>,
    pub f_value: Option<f64>,
    /// `f_value` to 64 significant digits.
    pub f_value_digits: Option<String>,
    /// `dim G`.
    pub d1: u64,
    /// `[k:Q]`.
    pub d2: u64,
    /// Degree of the special linear space the family is embedded in.
    pub sl_degree: u64,
    /// Multiplicative constant of `sys >= c1 log(vol) - c2`.
    pub c1: f64,
    /// `h = renormalization * g` relating the family's metric to the subspace metric.
    pub renormalization: f64,
    /// Set when `c1` rests on a step that does not check out numerically.
    pub caveat: Option<String>,
    /// The constant the displayed chain of inequalities actually delivers,
    /// when it differs from `c1`.
    pub composed_c1: Option<f64>,
}

/// `2 sqrt(2) / (n (n^2 - 1))`.
pub fn special_linear_c1(n: f64) -> f64 {
    2.0 * SQRT_2 / (n * (n * n - 1.0))
}

/// `2 sqrt(2) / (d1 d2 ((d1 d2)^2 - 1))`.
pub fn restriction_c1(d1: f64, d2: f64) -> f64 {
    special_linear_c1(d1 * d2)
}

fn hyperbolic_type(family: Family) -> Option<KcType> {
    match family {
        Family::SpecialLinear { n } => Some(KcType::A(n - 1)),
        Family::RealHyperbolic { n } | Family::RealHyperbolicOverField { n, .. } => {
            if n % 2 == 0 {
                Some(KcType::B(n / 2))
            } else if n >= 5 {
                Some(KcType::D((n + 1) / 2))
            } else {
                // so(3,1) is not simple over C
                None
            }
        }
        Family::ComplexHyperbolic { n } => Some(KcType::A(n)),
        Family::QuaternionicHyperbolic { n } => Some(KcType::C(n + 1)),
        Family::Restriction { kc, .. } => Some(kc),
    }
}

/// Growth constant `c1` for a family, with the metric renormalization and
/// dimension bookkeeping that produce it.
pub fn growth_constant(family: Family) -> Result<ConstantsProfile, BoundsError> {
    let unsupported = |why: &str| Err(BoundsError::UnsupportedFamily(why.to_string()));
    let (d1, d2, sl_degree, c1, renormalization) = match family {
        Family::SpecialLinear { n } => {
            if n < 2 {
                return unsupported("special linear family needs n >= 2");
            }
            let n64 = u64::from(n);
            (n64 * n64 - 1, 1, n64, special_linear_c1(n as f64), 1.0)
        }
        Family::RealHyperbolic { n } | Family::ComplexHyperbolic { n } | Family::QuaternionicHyperbolic { n } => {
            if n < 2 {
                return unsupported("hyperbolic families need n >= 2");
            }
            let n64 = u64::from(n);
            // b, dim G, kappa with h = g / kappa
            let (b, dim_g, kappa) = match family {
                Family::RealHyperbolic { .. } => (1, n64 * (n64 + 1) / 2, 4.0),
                Family::ComplexHyperbolic { .. } => (2, n64 * (n64 + 2), 2.0),
                _ => (4, (n64 + 1) * (2 * n64 + 3), 4.0),
            };
            let sl = b * (n64 + 1);
            let c1 = 2.0 * SQRT_2 / (sl as f64 * dim_g as f64) / f64::sqrt(kappa);
            (dim_g, 1, sl, c1, 1.0 / kappa)
        }
        Family::Restriction { kc, degree } => {
            if degree < 1 {
                return unsupported("field degree must be at least 1");
            }
            let d1 = kc.dimension();
            let d2 = u64::from(degree);
            (d1, d2, d1 * d2, restriction_c1(d1 as f64, d2 as f64), 1.0)
        }
        Family::RealHyperbolicOverField { n, degree } => {
            if n < 4 || degree < 1 {
                return unsupported("needs n >= 4 and field degree >= 1");
            }
            let (n64, d) = (u64::from(n), u64::from(degree));
            let sl = (2 * n64 * n64 + 5 * n64 + 3) * d;
            let alpha = 1.0 / (4.0 * (n as f64 - 1.0) * degree as f64);
            let c1 = SQRT_2 / (144.0 * (degree as f64).powf(3.5) * (n as f64).powf(3.5));
            (n64 * (n64 + 1) / 2, d, sl, c1, alpha)
        }
    };

    let kc_type = hyperbolic_type(family);
    let exponents = kc_type.map(KcType::exponents).unwrap_or_default();
    let f = kc_type.map(f_value_exact);
    let (caveat, composed_c1) = match family {
        Family::RealHyperbolicOverField { .. } => {
            let composed = renormalization.sqrt() * special_linear_c1(sl_degree as f64);
            let note = (composed < c1).then(|| {
                format!(
                    "the final simplification to sqrt(2)/(144 d^3.5 n^3.5) is not implied by the \
                     preceding step, which gives {composed:e}"
                )
            });
            (note, Some(composed))
        }
        _ => (None, None),
    };
    Ok(ConstantsProfile {
        family,
        kc_type,
        rank: kc_type.map(KcType::rank),
        exponents,
        f_value: f.as_ref().map(|v| v.to_f64()),
        f_value_digits: f.as_ref().map(|v| v.to_scientific(64)),
        d1,
        d2,
        sl_degree,
        c1,
        renormalization,
        caveat,
        composed_c1,
    })
}

/// One admissible choice for volume-only constants: bound `[k:Q]` through
/// [`degree_bound`] and feed it into the restriction-of-scalars constant.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct VolumeGrowthConstant {
    pub degree: DegreeBound,
    pub d2: f64,
    pub c1: f64,
}

pub fn volume_growth_constant(kc: KcType, volume: f64) -> Result<VolumeGrowthConstant, BoundsError> {
    let degree = degree_bound(kc, volume)?;
    let d2 = degree.value.floor().max(1.0);
    Ok(VolumeGrowthConstant { degree, d2, c1: restriction_c1(kc.dimension() as f64, d2) })
}
