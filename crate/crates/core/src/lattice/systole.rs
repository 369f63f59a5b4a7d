use std::f64::consts::SQRT_2;

use num_bigint::BigInt;
use serde::Serialize;

use super::LatticeError;
use crate::bounds::special_linear_c1;
use crate::numeric::{acosh, bigint_ln, bigint_to_f64};

fn level_minus_n(n: usize, p: u64, m: u32) -> Result<BigInt, LatticeError> {
    if n < 2 || m == 0 {
        return Err(LatticeError::InvalidInput("need n >= 2 and m >= 1".into()));
    }
    let level = BigInt::from(p).pow(m);
    if level <= BigInt::from(2 * n) {
        return Err(LatticeError::LevelTooSmall { level: level.to_string(), n });
    }
    Ok(level - BigInt::from(n))
}

/// `(2 sqrt(2) / n) arccosh((p^m - n) / n)`: every semisimple non-identity
/// element of `Γ(p^m)` is at least this long.
pub fn congruence_length_lb(n: usize, p: u64, m: u32) -> Result<f64, LatticeError> {
    let diff = level_minus_n(n, p, m)?;
    let nf = n as f64;
    let z = bigint_to_f64(&diff) / nf;
    let a = if z.is_finite() {
        acosh(z)
    } else {
        bigint_ln(&diff) - nf.ln() + std::f64::consts::LN_2
    };
    Ok(2.0 * SQRT_2 / nf * a)
}

/// `(2 sqrt(2) / n) log((p^m - n) / n)`, the logarithmic form of
/// [`congruence_length_lb`].
pub fn sys_lower_bound(n: usize, p: u64, m: u32) -> Result<f64, LatticeError> {
    let diff = level_minus_n(n, p, m)?;
    let nf = n as f64;
    Ok(2.0 * SQRT_2 / nf * (bigint_ln(&diff) - nf.ln()))
}

/// `(p^m)^(n^2 - 1)`, an upper bound for `|SL_n(Z) : Γ(p^m)|`.
pub fn index_bound(n: usize, p: u64, m: u32) -> BigInt {
    let e = u32::try_from(n * n - 1).expect("n^2 - 1 fits in u32") * m;
    BigInt::from(p).pow(e)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct GrowthRow {
    pub m: u32,
    pub sys_lb: f64,
    /// `(n^2 - 1) m log p`, the log of [`index_bound`].
    pub log_index_ub: f64,
    /// `c1 * log_index_ub` with the special linear constant `c1`.
    pub predicted: f64,
}

/// Rows `m = 1 ..= m_max` of the systole bound along the `p`-tower.
pub fn growth_table(n: usize, p: u64, m_max: u32) -> Result<Vec<GrowthRow>, LatticeError> {
    if p <= 2 * n as u64 {
        return Err(LatticeError::LevelTooSmall { level: p.to_string(), n });
    }
    let c1 = special_linear_c1(n as f64);
    (1..=m_max)
        .map(|m| {
            let log_index_ub = (n * n - 1) as f64 * m as f64 * (p as f64).ln();
            Ok(GrowthRow { m, sys_lb: sys_lower_bound(n, p, m)?, log_index_ub, predicted: c1 * log_index_ub })
        })
        .collect()
}
